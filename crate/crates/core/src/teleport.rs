//! Teleportation as a programmable channel.
//!
//! Two program qubits `(a, b)` are prepared in
//! `√(1−ε)|B₀⟩ + √ε(α₁|B₁⟩ + α₂|B₂⟩ + α₃|B₃⟩)`. The data qubit and `a` are
//! measured in the Bell basis and `b` is corrected. Averaged over outcomes
//! the data state arrives as `(1−ε)ρ + ε Σ|α_i|² σ_iρσ_i`, a Pauli channel
//! whose generator has the diagonal GKS matrix `diag(|α₁|², |α₂|², |α₃|²)`.
//!
//! Qubit order in the three-qubit register is `(data, a, b)`.
//!
//! Correction table: outcome `B_k` is undone by `σ_k`, with `σ₀ = 1`. With
//! the singlet `B₀` as the teleportation resource this is the assignment
//! that makes the `ε = 0` program reproduce the input exactly.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{AffineGenerator, GksMatrix};
use crate::linalg::{c, pauli, projector, tensor, trace_out_leading, CMatrix, CVector, DensityMatrix, Mat3, Vec3};
use crate::tolerance::Tolerances;

/// Entangled two-qubit program: weight `ε` and Pauli amplitudes `α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawBellProgram", into = "RawBellProgram")]
pub struct BellProgram {
    epsilon: f64,
    alpha: [Complex64; 3],
}

#[derive(Serialize, Deserialize)]
struct RawBellProgram {
    epsilon: f64,
    alpha: [[f64; 2]; 3],
}

impl TryFrom<RawBellProgram> for BellProgram {
    type Error = Error;
    fn try_from(r: RawBellProgram) -> Result<Self> {
        BellProgram::new(r.epsilon, r.alpha.map(|[re, im]| c(re, im)))
    }
}

impl From<BellProgram> for RawBellProgram {
    fn from(p: BellProgram) -> Self {
        RawBellProgram { epsilon: p.epsilon, alpha: p.alpha.map(|z| [z.re, z.im]) }
    }
}

impl BellProgram {
    pub fn new(epsilon: f64, alpha: [Complex64; 3]) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::usage(format!("program weight ε = {epsilon} outside [0, 1]")));
        }
        check_alpha(&alpha)?;
        Ok(Self { epsilon, alpha })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn alpha(&self) -> &[Complex64; 3] {
        &self.alpha
    }

    /// `|α_i|²`.
    pub fn weights(&self) -> [f64; 3] {
        self.alpha.map(|a| a.norm_sqr())
    }
}

fn check_alpha(alpha: &[Complex64; 3]) -> Result<()> {
    if alpha.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
        return Err(Error::usage("non-finite Pauli amplitude"));
    }
    let total: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
    if (total - 1.0).abs() > Tolerances::DEFAULT.completeness {
        return Err(Error::usage(format!("Pauli amplitudes have squared norm {total}, expected 1")));
    }
    Ok(())
}

/// One of the four Bell states `B₀..B₃`.
#[derive(Debug, Clone, PartialEq)]
pub struct BellState {
    pub index: usize,
    pub ket: CVector,
}

/// `B₀ = (|01⟩−|10⟩)/√2`, `B₁ = (|00⟩−|11⟩)/√2`, `B₂ = (|00⟩+|11⟩)/√2`,
/// `B₃ = (|01⟩+|10⟩)/√2`.
pub fn bell_basis() -> [BellState; 4] {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    // amplitudes on |00⟩, |01⟩, |10⟩, |11⟩
    let table = [[0.0, s, -s, 0.0], [s, 0.0, 0.0, -s], [s, 0.0, 0.0, s], [0.0, s, s, 0.0]];
    let mut k = 0;
    table.map(|amps| {
        let state = BellState { index: k, ket: CVector::from_iterator(4, amps.iter().map(|&x| c(x, 0.0))) };
        k += 1;
        state
    })
}

pub fn teleport_program_ket(p: &BellProgram) -> CVector {
    let basis = bell_basis();
    let mut ket = &basis[0].ket * c((1.0 - p.epsilon).sqrt(), 0.0);
    let w = c(p.epsilon.sqrt(), 0.0);
    for (alpha, b) in p.alpha.iter().zip(&basis[1..]) {
        ket += &b.ket * (w * alpha);
    }
    ket
}

/// `(1−ε)ρ + ε Σ|α_i|² σ_iρσ_i`.
pub fn teleport_channel_closed(p: &BellProgram, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let r = rho.matrix();
    let mut out = r * c(1.0 - p.epsilon, 0.0);
    for (i, w) in p.weights().into_iter().enumerate() {
        let s = pauli(i + 1)?;
        out += &s * r * &s * c(p.epsilon * w, 0.0);
    }
    DensityMatrix::new(out)
}

/// Correction applied to qubit `b` after Bell outcome `k`.
pub fn correction(outcome: usize) -> Result<CMatrix> {
    pauli(outcome)
}

/// One measurement branch: the corrected, unnormalized state of qubit `b`.
#[derive(Debug, Clone, PartialEq)]
pub struct TeleportBranch {
    pub outcome: usize,
    pub probability: f64,
    pub state: CMatrix,
}

/// Full three-qubit simulation, one entry per Bell outcome.
pub fn teleport_branches(p: &BellProgram, rho: &DensityMatrix) -> Result<Vec<TeleportBranch>> {
    let joint = tensor(rho.matrix(), &projector(&teleport_program_ket(p)))?;
    let id = CMatrix::identity(2, 2);
    bell_basis()
        .iter()
        .map(|b| {
            let proj = tensor(&projector(&b.ket), &id)?;
            let kept = trace_out_leading(&(&proj * &joint * &proj), 2);
            let fix = correction(b.index)?;
            let state = &fix * kept * fix.adjoint();
            Ok(TeleportBranch { outcome: b.index, probability: state.trace().re, state })
        })
        .collect()
}

/// Measurement-averaged output of the three-qubit circuit.
pub fn teleport_channel_oracle(p: &BellProgram, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let sum = teleport_branches(p, rho)?
        .into_iter()
        .fold(CMatrix::zeros(2, 2), |acc, b| acc + b.state);
    DensityMatrix::new(sum)
}

/// Affine form of `L ρ = Σ|α_i|² σ_iρσ_i − ρ`.
pub fn teleport_generator(alpha: &[Complex64; 3]) -> Result<AffineGenerator> {
    check_alpha(alpha)?;
    let w = alpha.map(|a| a.norm_sqr());
    let d = Vec3::new(-2.0 * (w[1] + w[2]), -2.0 * (w[0] + w[2]), -2.0 * (w[0] + w[1]));
    AffineGenerator::new(Mat3::from_diagonal(&d), Vec3::zeros())
}

/// `diag(|α₁|², |α₂|², |α₃|²)`.
pub fn teleport_gks(alpha: &[Complex64; 3]) -> Result<GksMatrix> {
    check_alpha(alpha)?;
    Ok(GksMatrix::diagonal(alpha.map(|a| a.norm_sqr())))
}
