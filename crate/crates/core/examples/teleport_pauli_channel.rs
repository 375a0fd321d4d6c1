//! Teleportation through the program `√(1−ε)|B₀⟩ + √ε Σ α_k|B_k⟩` gives
//! the Pauli channel `(1−ε)ρ + ε Σ|α_k|² σ_kρσ_k`.
//!
//! Run with `cargo run --example teleport_pauli_channel`.

use qubit_markov::generator::gks_from_affine;
use qubit_markov::linalg::{bloch_components, c, BlochVector, DensityMatrix};
use qubit_markov::teleport::{
    teleport_branches, teleport_channel_closed, teleport_channel_oracle, teleport_generator, BellProgram,
};
use qubit_markov::Result;

fn main() -> Result<()> {
    let s = (1.0_f64 / 3.0).sqrt();
    let program = BellProgram::new(0.2, [c(s, 0.0), c(0.0, s), c(-s, 0.0)])?;
    let rho = DensityMatrix::from_bloch(&BlochVector::new(0.0, 0.6, 0.8)?);

    for b in teleport_branches(&program, &rho)? {
        println!("outcome B{}: probability {:.4}, corrected state {:?}", b.outcome, b.probability, (bloch_components(&b.state) / b.probability).as_slice());
    }
    println!("averaged circuit: {}", teleport_channel_oracle(&program, &rho)?.bloch());
    println!("Pauli channel:    {}", teleport_channel_closed(&program, &rho)?.bloch());

    let g = gks_from_affine(&teleport_generator(program.alpha())?);
    println!("generator: h = {:?}, C diagonal = {:?}", g.h.vector().as_slice(), g.c.eigenvalues());
    Ok(())
}
