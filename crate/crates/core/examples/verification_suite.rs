//! Runs the seeded cross-check suite in-process and prints one line per check.
//!
//! Run with `cargo run --example verification_suite -- [seed]`.

use qubit_markov::verify::{run_verification, VerifyConfig};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(1);
    let report = run_verification(&VerifyConfig { seed, cases: 128, ..VerifyConfig::default() });
    for c in &report.checks {
        let mark = if c.passed { "ok  " } else { "FAIL" };
        println!("{mark} {:<24} max error {:.2e} (tolerance {:.0e})", c.name, c.max_error, c.tolerance);
    }
    println!("all passed: {}", report.passed);
}
