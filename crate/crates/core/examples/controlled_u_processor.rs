//! The controlled-U processor: one run with program `√(1−ε)e^{iχ}|0⟩ + √ε|1⟩`
//! realizes `(1−ε)ρ + ε U₂ρU₂†`, an Euler step of the generator `R − 1`.
//!
//! Run with `cargo run --example controlled_u_processor`.

use qubit_markov::evolution::euler_step;
use qubit_markov::generator::gks_from_affine;
use qubit_markov::linalg::{max_abs_diff, BlochVector, DensityMatrix};
use qubit_markov::processor::{
    generator_from_unitary, processor_step_closed, processor_step_oracle, scheme_gks, scheme_hamiltonian,
    su2_from_euler, EulerAngles, ProgramState,
};
use qubit_markov::Result;

fn main() -> Result<()> {
    let angles = EulerAngles::new(1.1, 0.4, 2.3)?;
    let u2 = su2_from_euler(&angles);
    let program = ProgramState::new(0.05, 0.7)?;
    let r = BlochVector::new(0.3, -0.5, 0.2)?;
    let rho = DensityMatrix::from_bloch(&r);

    let oracle = processor_step_oracle(&program, &u2, &rho)?;
    let closed = processor_step_closed(&program, &u2, &rho)?;
    println!("two-qubit simulation: r = {}", oracle.bloch());
    println!("closed form:          r = {}", closed.bloch());
    println!("difference {:.1e}", max_abs_diff(oracle.matrix(), closed.matrix()));

    let generator = generator_from_unitary(&u2)?;
    let euler = euler_step(&generator, &r, program.epsilon())?;
    println!("Euler step of R - 1:  r = {euler}");

    let gks = gks_from_affine(&generator);
    println!("induced h = {:?}", gks.h.vector().as_slice());
    println!("closed  h = {:?}", scheme_hamiltonian(&angles).vector().as_slice());
    println!("GKS eigenvalues {:?}", scheme_gks(&angles).eigenvalues());
    Ok(())
}
