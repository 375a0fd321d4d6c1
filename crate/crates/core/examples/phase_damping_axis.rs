//! When `tr U₂ = 0` the processor simulates pure phase damping. The damping
//! axis sits at polar angles `(θ/2, φ)` and does not depend on `ψ`.
//!
//! Run with `cargo run --example phase_damping_axis`.

use std::f64::consts::PI;

use qubit_markov::cli::classify_report;
use qubit_markov::processor::{damping_axis, phase_damping_axis, scheme_gks, EulerAngles};
use qubit_markov::{Result, Tolerances};

fn main() -> Result<()> {
    let tol = Tolerances::DEFAULT;
    for (theta, phi) in [(PI, 0.0), (PI / 2.0, PI / 4.0), (2.0, 0.9), (0.0, 0.3)] {
        let angles = EulerAngles::new(theta, phi, PI - phi)?;
        let axis = damping_axis(&scheme_gks(&angles), &tol).expect("rank one");
        let n = phase_damping_axis(theta, phi);
        println!(
            "theta={theta:.3} phi={phi:.3}: axis {:?}, polar {:.4} (theta/2 = {:.4}), expected {:?}",
            axis.axis,
            axis.polar,
            0.5 * theta,
            n.as_slice()
        );
    }
    for angles in [EulerAngles::new(PI, 0.0, PI)?, EulerAngles::new(0.0, 0.4, 0.4)?, EulerAngles::new(0.0, 0.0, 0.0)?] {
        println!("{angles:?}: {}", classify_report(&angles, &tol).summary);
    }
    Ok(())
}
