//! Deterministic controlled-U processor with a one-qubit program register.
//!
//! The program qubit `√(1−ε) e^{iχ}|0⟩ + √ε|1⟩` controls an SU(2) block `U₂`
//! acting on the data qubit; dropping the program register leaves
//! `(1−ε)ρ + ε U₂ρU₂†`. With `ε = dt` one run of the processor is one Euler
//! step of the generator `L ρ = U₂ρU₂† − ρ`, whose affine form is `R − 1`
//! for the adjoint rotation `R` of `U₂`. That generator is unital and its GKS
//! matrix has rank one: a phase damping about a single axis, accompanied by
//! a Hamiltonian unless `tr U₂ = 0`.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generator::{AffineGenerator, GksMatrix, HamiltonianVec};
use crate::linalg::{
    c, identity, is_unitary, partial_trace_first, pauli_xyz, projector, tensor, CMatrix, CVector,
    DensityMatrix, Mat3, Vec3,
};
use crate::tolerance::Tolerances;

/// Euler angles in the y convention, each canonicalized to `[0, 2π)`.
///
/// Shifting `θ` by `2π` flips the sign of `U₂` but not the channel, so
/// comparisons should be made on unitaries up to phase, not on angle triples.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAngles", into = "RawAngles")]
pub struct EulerAngles {
    theta: f64,
    phi: f64,
    psi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawAngles {
    theta: f64,
    phi: f64,
    psi: f64,
}

impl TryFrom<RawAngles> for EulerAngles {
    type Error = Error;
    fn try_from(r: RawAngles) -> Result<Self> {
        EulerAngles::new(r.theta, r.phi, r.psi)
    }
}

impl From<EulerAngles> for RawAngles {
    fn from(a: EulerAngles) -> Self {
        RawAngles { theta: a.theta, phi: a.phi, psi: a.psi }
    }
}

fn canonical_angle(x: f64) -> f64 {
    let r = x.rem_euclid(TAU);
    if r >= TAU {
        0.0
    } else {
        r
    }
}

impl EulerAngles {
    pub fn new(theta: f64, phi: f64, psi: f64) -> Result<Self> {
        if !(theta.is_finite() && phi.is_finite() && psi.is_finite()) {
            return Err(Error::usage("Euler angles must be finite"));
        }
        Ok(Self {
            theta: canonical_angle(theta),
            phi: canonical_angle(phi),
            psi: canonical_angle(psi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn psi(&self) -> f64 {
        self.psi
    }
}

/// Program register state `√(1−ε) e^{iχ}|0⟩ + √ε|1⟩`, `ε ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProgram", into = "RawProgram")]
pub struct ProgramState {
    epsilon: f64,
    chi: f64,
}

#[derive(Serialize, Deserialize)]
struct RawProgram {
    epsilon: f64,
    #[serde(default)]
    chi: f64,
}

impl TryFrom<RawProgram> for ProgramState {
    type Error = Error;
    fn try_from(r: RawProgram) -> Result<Self> {
        ProgramState::new(r.epsilon, r.chi)
    }
}

impl From<ProgramState> for RawProgram {
    fn from(p: ProgramState) -> Self {
        RawProgram { epsilon: p.epsilon, chi: p.chi }
    }
}

impl ProgramState {
    pub fn new(epsilon: f64, chi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&epsilon) {
            return Err(Error::usage(format!("program weight ε = {epsilon} outside [0, 1]")));
        }
        if !chi.is_finite() {
            return Err(Error::usage("program phase χ must be finite"));
        }
        Ok(Self { epsilon, chi })
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn chi(&self) -> f64 {
        self.chi
    }
}

/// The SU(2) block `U₂(θ, φ, ψ)`.
pub fn su2_from_euler(a: &EulerAngles) -> CMatrix {
    let (st, ct) = (0.5 * a.theta).sin_cos();
    let sum = 0.5 * (a.phi + a.psi);
    let diff = 0.5 * (a.phi - a.psi);
    let e = |x: f64| c(x.cos(), x.sin());
    CMatrix::from_row_slice(2, 2, &[e(-sum) * ct, -e(-diff) * st, e(diff) * st, e(sum) * ct])
}

/// Adjoint SO(3) image of `U₂(θ, φ, ψ)` in closed form.
pub fn adjoint_rotation(a: &EulerAngles) -> Mat3 {
    let (st, ct) = a.theta.sin_cos();
    let (sf, cf) = a.phi.sin_cos();
    let (sp, cp) = a.psi.sin_cos();
    Mat3::new(
        -sf * sp + ct * cf * cp,
        -ct * cf * sp - sf * cp,
        st * cf,
        ct * sf * cp + cf * sp,
        cf * cp - ct * sf * sp,
        st * sf,
        -st * cp,
        st * sp,
        ct,
    )
}

/// Adjoint rotation of an arbitrary 2×2 unitary, `R_ij = ½ tr(σ_i U σ_j U†)`.
pub fn adjoint_of_unitary(u: &CMatrix) -> Mat3 {
    let s = pauli_xyz();
    let ud = u.adjoint();
    Mat3::from_fn(|i, j| 0.5 * (&s[i] * u * &s[j] * &ud).trace().re)
}

pub fn program_ket(p: &ProgramState) -> CVector {
    let a = (1.0 - p.epsilon).sqrt();
    CVector::from_vec(vec![c(p.chi.cos(), p.chi.sin()) * a, c(p.epsilon.sqrt(), 0.0)])
}

fn require_unitary(u2: &CMatrix) -> Result<()> {
    if u2.shape() != (2, 2) || !is_unitary(u2, Tolerances::DEFAULT.unitary) {
        return Err(Error::usage("data block must be a 2x2 unitary"));
    }
    Ok(())
}

/// `|0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ U₂`, program qubit first.
pub fn build_controlled_u(u2: &CMatrix) -> Result<CMatrix> {
    require_unitary(u2)?;
    let mut u = identity(4);
    for i in 0..2 {
        for j in 0..2 {
            u[(2 + i, 2 + j)] = u2[(i, j)];
        }
    }
    Ok(u)
}

/// One processor run by full two-qubit evolution and a partial trace over
/// the program register.
pub fn processor_step_oracle(p: &ProgramState, u2: &CMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    let u = build_controlled_u(u2)?;
    let joint = tensor(&projector(&program_ket(p)), rho.matrix())?;
    let evolved = &u * joint * u.adjoint();
    DensityMatrix::new(partial_trace_first(&evolved)?)
}

/// One processor run in closed form, `(1−ε)ρ + ε U₂ρU₂†`. Independent of `χ`.
pub fn processor_step_closed(p: &ProgramState, u2: &CMatrix, rho: &DensityMatrix) -> Result<DensityMatrix> {
    require_unitary(u2)?;
    let r = rho.matrix();
    let out = r * c(1.0 - p.epsilon, 0.0) + u2 * r * u2.adjoint() * c(p.epsilon, 0.0);
    DensityMatrix::new(out)
}

/// Affine form `(R − 1, 0)` of `L ρ = U₂ρU₂† − ρ`, with `R` computed from `u2`.
pub fn generator_from_unitary(u2: &CMatrix) -> Result<AffineGenerator> {
    require_unitary(u2)?;
    AffineGenerator::new(adjoint_of_unitary(u2) - Mat3::identity(), Vec3::zeros())
}

/// The Hamiltonian of the scheme as the matrix
///
/// ```text
/// [ sin(φ+ψ)cos²(θ/2)               −(i/2) sinθ (e^{−iφ} + e^{iψ}) ]
/// [ (i/2) sinθ (e^{iφ} + e^{−iψ})   −sin(φ+ψ)cos²(θ/2)             ]
/// ```
///
/// This matrix equals `Σ h_i σ_i`, twice the operator `H = ½ Σ h_i σ_i`
/// whose commutator reproduces the antisymmetric part of `R − 1`.
/// [`scheme_hamiltonian`] applies that factor.
pub fn hamiltonian_matrix_as_printed(a: &EulerAngles) -> CMatrix {
    let diag = (a.phi + a.psi).sin() * (0.5 * a.theta).cos().powi(2);
    let st = a.theta.sin();
    let e = |x: f64| c(x.cos(), x.sin());
    let i_half = c(0.0, 0.5);
    CMatrix::from_row_slice(
        2,
        2,
        &[
            c(diag, 0.0),
            -i_half * st * (e(-a.phi) + e(a.psi)),
            i_half * st * (e(a.phi) + e(-a.psi)),
            c(-diag, 0.0),
        ],
    )
}

/// Hamiltonian coefficients of the scheme's generator:
/// `h = (½ sinθ (sinψ − sinφ), ½ sinθ (cosφ + cosψ), cos²(θ/2) sin(φ+ψ))`.
pub fn scheme_hamiltonian(a: &EulerAngles) -> HamiltonianVec {
    let m = hamiltonian_matrix_as_printed(a);
    let s = pauli_xyz();
    let h = Vec3::from_fn(|i, _| 0.5 * (&m * &s[i]).trace().re);
    HamiltonianVec::new(h).expect("finite angles give finite coefficients")
}

/// Closed-form GKS matrix of the scheme's generator: real, symmetric, rank one.
pub fn scheme_gks(a: &EulerAngles) -> GksMatrix {
    let (t, f, p) = (a.theta, a.phi, a.psi);
    let s2 = (0.5 * t).sin().powi(2);
    let c2 = (0.5 * t).cos().powi(2);
    let st = t.sin();
    let c12 = 0.5 * s2 * (p - f).sin();
    let c13 = 0.25 * st * (f.cos() - p.cos());
    let c23 = 0.25 * st * (f.sin() + p.sin());
    let m = Mat3::new(
        s2 * (0.5 * (f - p)).sin().powi(2),
        c12,
        c13,
        c12,
        s2 * (0.5 * (f - p)).cos().powi(2),
        c23,
        c13,
        c23,
        c2 * (0.5 * (f + p)).sin().powi(2),
    );
    GksMatrix::from_real(m).expect("symmetric by construction")
}

/// GKS matrix for traceless `U₂` with `ψ = π − φ`.
pub fn scheme_gks_traceless(theta: f64, phi: f64) -> GksMatrix {
    let s2 = (0.5 * theta).sin().powi(2);
    let st = theta.sin();
    let (sf, cf) = phi.sin_cos();
    let c12 = 0.5 * s2 * (2.0 * phi).sin();
    let c13 = 0.5 * st * cf;
    let c23 = 0.5 * st * sf;
    let m = Mat3::new(s2 * cf * cf, c12, c13, c12, s2 * sf * sf, c23, c13, c23, (0.5 * theta).cos().powi(2));
    GksMatrix::from_real(m).expect("symmetric by construction")
}

/// `R(θ/2, φ, ψ') diag(0, 0, 1) Rᵀ(θ/2, φ, ψ')`: z-axis phase damping carried
/// to the polar angles `(θ/2, φ)`. The result does not depend on `ψ'`.
pub fn rotated_z_damping(theta: f64, phi: f64, psi: f64) -> Result<GksMatrix> {
    let r = adjoint_rotation(&EulerAngles::new(0.5 * theta, phi, psi)?);
    let z = r.column(2).into_owned();
    GksMatrix::from_real(z * z.transpose())
}

const GAUGE_TIE: f64 = 1e-12;

/// Fixes the sign of an axis: `n₃ ≥ 0`, then `n₁ ≥ 0`, then `n₂ > 0`.
pub fn canonical_axis(n: Vec3) -> Vec3 {
    let flip = if n.z.abs() > GAUGE_TIE {
        n.z < 0.0
    } else if n.x.abs() > GAUGE_TIE {
        n.x < 0.0
    } else {
        n.y < 0.0
    };
    if flip {
        -n
    } else {
        n
    }
}

/// Unit axis at polar angles `(θ/2, φ)`; its outer product is [`scheme_gks_traceless`].
pub fn phase_damping_axis(theta: f64, phi: f64) -> Vec3 {
    let (s, c) = (0.5 * theta).sin_cos();
    canonical_axis(Vec3::new(s * phi.cos(), s * phi.sin(), c))
}

/// A rank-one real GKS matrix written as `rate · n nᵀ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DampingAxis {
    pub axis: [f64; 3],
    pub rate: f64,
    /// Polar angle of `axis` from +z, radians.
    pub polar: f64,
    /// Azimuth of `axis` in `[0, 2π)`, radians.
    pub azimuth: f64,
}

/// Reads the phase-damping axis off a real, PSD, rank-one GKS matrix.
/// Returns `None` for any other matrix, including the zero matrix.
pub fn damping_axis(cm: &GksMatrix, tol: &Tolerances) -> Option<DampingAxis> {
    if cm.imag_part().amax() > tol.unital || cm.rank(tol.rank) != 1 {
        return None;
    }
    let eig = cm.eigenvalues();
    if eig[0] < -tol.psd_floor {
        return None;
    }
    let re = cm.real_part();
    let k = (0..3).max_by(|&i, &j| re[(i, i)].total_cmp(&re[(j, j)]))?;
    let col = re.column(k).into_owned();
    let n = canonical_axis(col / col.norm());
    let azimuth = if n.x.abs() <= GAUGE_TIE && n.y.abs() <= GAUGE_TIE {
        0.0
    } else {
        n.y.atan2(n.x).rem_euclid(TAU)
    };
    Some(DampingAxis {
        axis: [n.x, n.y, n.z],
        rate: cm.trace(),
        polar: n.z.clamp(-1.0, 1.0).acos(),
        azimuth,
    })
}

/// True when `U₂` acts trivially on states (`R = 1`), so the generator is zero.
pub fn is_identity_channel(a: &EulerAngles, tol: f64) -> bool {
    (adjoint_rotation(a) - Mat3::identity()).amax() <= tol
}
