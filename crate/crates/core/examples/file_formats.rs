//! Reading a generator document and writing trajectories as JSON and CSV.
//!
//! Run with `cargo run --example file_formats`.

use qubit_markov::cli::extract_report;
use qubit_markov::evolution::euler_trajectory;
use qubit_markov::formats::{from_json, to_json, trajectory_from_csv, trajectory_to_csv, GeneratorDoc, TrajectoryDoc};
use qubit_markov::linalg::BlochVector;
use qubit_markov::{Result, Tolerances};

const INPUT: &str = r#"{"gks": {"h": [0, 0, 1], "c": [[[0.1, 0], [0, 0], [0, 0]], [[0, 0], [0.1, 0], [0, 0]], [[0, 0], [0, 0], [0, 0]]]}}"#;

fn main() -> Result<()> {
    let doc: GeneratorDoc = from_json(INPUT, "inline")?;
    let report = extract_report(&doc, &Tolerances::DEFAULT)?;
    println!("{}", to_json(&report));

    let loaded = doc.load(&Tolerances::DEFAULT)?;
    let tr = euler_trajectory(&loaded.affine, BlochVector::new(0.0, 0.0, 1.0)?, 0.1, 5)?;
    let csv = trajectory_to_csv(&tr);
    print!("{csv}");
    assert_eq!(trajectory_from_csv(&csv)?, tr);

    let json = to_json(&TrajectoryDoc::new(&tr, Some(doc)));
    let back: TrajectoryDoc = from_json(&json, "round trip")?;
    assert_eq!(back.to_trajectory()?, tr);
    println!("JSON and CSV round trips are exact");
    Ok(())
}
