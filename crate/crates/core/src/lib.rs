//! Simulation and cross-checking of single-qubit Markovian generators.
//!
//! * [`linalg`]: qubit states, Pauli algebra, tensor products, partial traces, Kraus maps.
//! * [`generator`]: GKS and affine forms of a Lindbladian and the exact conversion between them.
//! * [`processor`]: the controlled-U programmable processor and its induced phase-damping generator.
//! * [`teleport`]: teleportation with an entangled program as a Pauli channel.
//! * [`evolution`]: Euler stepping, the exact semigroup, generator estimation.
//! * [`verify`] and [`cli`]: the seeded cross-check suite and the batch commands.

pub mod cli;
pub mod error;
pub mod evolution;
pub mod formats;
pub mod generator;
pub mod linalg;
pub mod processor;
pub mod sampling;
pub mod teleport;
pub mod tolerance;
pub mod verify;

pub use error::{Error, Result};
pub use tolerance::Tolerances;
