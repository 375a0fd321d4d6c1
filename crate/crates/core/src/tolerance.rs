//! Numerical tolerances shared by every module.
//!
//! All checks in the crate read their thresholds from a [`Tolerances`]
//! record so that property tests and the command surface can tighten or
//! loosen them in one place.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Max-entry deviation allowed for `m − m†`.
    pub hermitian: f64,
    /// Allowed deviation of a density matrix trace from one.
    pub trace: f64,
    /// Eigenvalues above `-psd_floor` count as non-negative.
    pub psd_floor: f64,
    /// Max-entry deviation of `Σ E†E` from the identity.
    pub completeness: f64,
    /// Slack on the Bloch-ball radius.
    pub bloch_radius: f64,
    /// Max-entry deviation of `U†U` from the identity.
    pub unitary: f64,
    /// Max-entry deviation of `RᵀR` from the identity, and of `det R` from one.
    pub rotation: f64,
    /// Norm below which an inhomogeneity counts as zero.
    pub unital: f64,
    /// Eigenvalues at or below this count as zero when computing a rank.
    pub rank: f64,
}

impl Tolerances {
    pub const DEFAULT: Tolerances = Tolerances {
        hermitian: 1e-12,
        trace: 1e-12,
        psd_floor: 1e-10,
        completeness: 1e-10,
        bloch_radius: 1e-10,
        unitary: 1e-10,
        rotation: 1e-10,
        unital: 1e-10,
        rank: 1e-10,
    };
}

impl Default for Tolerances {
    fn default() -> Self {
        Self::DEFAULT
    }
}
