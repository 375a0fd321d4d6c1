//! Repeated short runs approximate `exp(tL)` to first order in the step.
//!
//! Run with `cargo run --example euler_vs_exact`.

use qubit_markov::evolution::{euler_trajectory, exact_channel};
use qubit_markov::generator::{affine_from_gks, GksForm, GksMatrix, HamiltonianVec};
use qubit_markov::linalg::{BlochVector, Vec3};
use qubit_markov::Result;

fn main() -> Result<()> {
    let form = GksForm::new(HamiltonianVec::new(Vec3::new(0.0, 0.0, 3.0))?, GksMatrix::diagonal([0.0, 0.0, 0.5]));
    let g = affine_from_gks(&form);
    let r0 = BlochVector::new(1.0, 0.0, 0.0)?;
    let exact = exact_channel(&g, 1.0)?.apply(r0.vector());
    println!("exact r(1) = {:?}", exact.as_slice());

    let mut previous: Option<f64> = None;
    for dt in [0.1, 0.05, 0.025, 0.0125, 0.00625] {
        let steps = (1.0_f64 / dt).round() as usize;
        let tr = euler_trajectory(&g, r0, dt, steps)?;
        let err = (tr.last().vector() - exact).norm();
        let order = previous.map(|p| format!("{:.3}", (p / err).log2())).unwrap_or_default();
        println!("dt={dt:<8} error {err:.3e} order {order}");
        previous = Some(err);
    }
    Ok(())
}
