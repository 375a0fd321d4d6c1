//! Converting between the affine Bloch form `dr/dt = M r + b` and the GKS
//! form `(h, C)`, and judging complete positivity.
//!
//! Run with `cargo run --example gks_recipe`.

use qubit_markov::generator::{affine_from_gks, gks_from_affine, is_unital, AffineGenerator, GksClassification};
use qubit_markov::linalg::{Mat3, Vec3};
use qubit_markov::{Result, Tolerances};

fn describe(name: &str, a: &AffineGenerator) {
    let g = gks_from_affine(a);
    let verdict = match g.c.classify(&Tolerances::DEFAULT) {
        GksClassification::ValidMarkovian => "Markovian".to_string(),
        GksClassification::NotPsd { min_eigenvalue } => format!("not Markovian (eigenvalue {min_eigenvalue:.3})"),
    };
    println!("{name}");
    println!("  h = {:?}", g.h.vector().as_slice());
    println!("  C real part = {:?}", g.c.real_part().as_slice());
    println!("  C imag part = {:?}", g.c.imag_part().as_slice());
    println!("  unital: {}, rank C: {}, {verdict}", is_unital(a), g.c.rank(1e-10));
    let back = affine_from_gks(&g);
    println!("  round trip error: {:.1e}", back.max_abs_diff(a));
}

fn main() -> Result<()> {
    let dephasing = AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-2.0, -2.0, 0.0)), Vec3::zeros())?;
    describe("phase damping about z", &dephasing);

    let decay = AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, -2.0)), Vec3::new(0.0, 0.0, -2.0))?;
    describe("amplitude damping toward the ground state", &decay);

    let bogus = AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, 1.0)), Vec3::zeros())?;
    describe("unital but not completely positive", &bogus);
    Ok(())
}
