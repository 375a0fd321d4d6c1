//! Qubit states on the Bloch ball and Kraus channels acting on them.
//!
//! Run with `cargo run --example kraus_bloch`.

use qubit_markov::linalg::{apply_kraus, c, pauli, BlochVector, CMatrix, DensityMatrix};
use qubit_markov::Result;

fn main() -> Result<()> {
    let r = BlochVector::new(0.6, 0.0, 0.8)?;
    let rho = DensityMatrix::from_bloch(&r);
    println!("pure state r = {r}, eigenvalues {:?}", rho.eigenvalues());

    // Phase flip with probability p: {√(1−p) 1, √p σ₃}.
    let p = 0.25_f64;
    let ops: Vec<CMatrix> = vec![pauli(0)? * c((1.0 - p).sqrt(), 0.0), pauli(3)? * c(p.sqrt(), 0.0)];
    let out = apply_kraus(&ops, &rho)?;
    println!("after phase flip p={p}: r = {}", out.bloch());
    println!("x shrinks by 1 - 2p = {}", 1.0 - 2.0 * p);

    let mixed = DensityMatrix::maximally_mixed();
    println!("maximally mixed state sits at r = {}", mixed.bloch());
    Ok(())
}
