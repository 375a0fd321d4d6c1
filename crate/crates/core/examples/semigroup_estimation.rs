//! The exact dynamics form a semigroup, and a short-time channel gives back
//! its generator with error proportional to the time.
//!
//! Run with `cargo run --example semigroup_estimation`.

use qubit_markov::evolution::{compose_channels, estimate_generator, exact_channel};
use qubit_markov::generator::affine_from_gks;
use qubit_markov::sampling::{case_rng, gks_form};
use qubit_markov::Result;

fn main() -> Result<()> {
    let g = affine_from_gks(&gks_form(&mut case_rng(1, 0, 0)));
    let (t1, t2) = (0.3, 0.45);
    let whole = exact_channel(&g, t1 + t2)?;
    let split = compose_channels(&exact_channel(&g, t1)?, &exact_channel(&g, t2)?);
    println!("|E(t1+t2) - E(t1)E(t2)| = {:.2e}", whole.max_abs_diff(&split));
    println!("largest image norm at t=0.75: {:.6}", whole.max_image_norm(2000));

    for t in [1e-2, 5e-3, 2.5e-3, 1.25e-3] {
        let estimate = estimate_generator(&exact_channel(&g, t)?, t)?;
        println!("t={t:<8} estimation error {:.4e}", estimate.max_abs_diff(&g));
    }
    Ok(())
}
