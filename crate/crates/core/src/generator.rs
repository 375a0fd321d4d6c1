//! Qubit Lindbladians in GKS canonical form and in affine Bloch-space form.
//!
//! A GKS generator is a pair `(h, C)`:
//!
//! ```text
//! L(ρ) = −i[H, ρ] + ½ Σ_ij C_ij ([σ_i ρ, σ_j] + [σ_i, ρ σ_j]),   H = ½ Σ h_i σ_i
//! ```
//!
//! Its action on Bloch vectors is affine, `r ↦ M r + b`, with
//!
//! ```text
//! M = [h]ₓ + S(C),   b = 2i (C₂₃ − C₃₂, C₃₁ − C₁₃, C₁₂ − C₂₁)
//! ```
//!
//! where `[h]ₓ r = h × r` and `S(C)` has diagonal `−2(C_jj + C_kk)` and
//! off-diagonal `C_ij + C_ji`. The antisymmetric part of `M` carries the
//! Hamiltonian, the symmetric part carries `Re C`, and `b` carries `Im C`.
//! [`affine_from_gks`] and [`gks_from_affine`] are exact inverses.

use nalgebra::Matrix3;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    c, complexify, hermitian_eigenvalues_3, is_rotation, pauli_xyz, CMatrix, DensityMatrix, Mat3, Vec3,
};
use crate::tolerance::Tolerances;

pub type CMat3 = Matrix3<Complex64>;

/// Hamiltonian coefficients `h` with `H = ½ Σ h_i σ_i` (rates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HamiltonianVec(Vec3);

impl HamiltonianVec {
    pub fn new(h: Vec3) -> Result<Self> {
        if !h.iter().all(|x| x.is_finite()) {
            return Err(Error::usage("non-finite Hamiltonian coefficient"));
        }
        Ok(Self(h))
    }

    pub fn zero() -> Self {
        Self(Vec3::zeros())
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    /// `½ Σ h_i σ_i`, traceless Hermitian.
    pub fn matrix(&self) -> CMatrix {
        let [sx, sy, sz] = pauli_xyz();
        (sx * c(self.0.x, 0.0) + sy * c(self.0.y, 0.0) + sz * c(self.0.z, 0.0)) * c(0.5, 0.0)
    }
}

/// Hermitian 3×3 coefficient matrix of the dissipative part.
///
/// Hermiticity is enforced on construction. Positivity is not: a matrix
/// recovered from an arbitrary affine map may fail it, and [`validate_gks`]
/// reports that verdict.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GksMatrix(CMat3);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum GksClassification {
    ValidMarkovian,
    NotPsd { min_eigenvalue: f64 },
}

impl GksMatrix {
    pub fn new(m: CMat3) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMat3, tol: &Tolerances) -> Result<Self> {
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::usage("non-finite GKS entry"));
        }
        let dev = (m - m.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if dev > tol.hermitian {
            return Err(Error::usage(format!("GKS matrix is not Hermitian (deviation {dev:.3e})")));
        }
        Ok(Self(m))
    }

    pub fn from_real(m: Mat3) -> Result<Self> {
        Self::new(complexify(&m))
    }

    pub fn zero() -> Self {
        Self(CMat3::zeros())
    }

    pub fn diagonal(d: [f64; 3]) -> Self {
        Self(CMat3::from_diagonal(&nalgebra::Vector3::new(c(d[0], 0.0), c(d[1], 0.0), c(d[2], 0.0))))
    }

    pub fn matrix(&self) -> &CMat3 {
        &self.0
    }

    pub fn real_part(&self) -> Mat3 {
        self.0.map(|z| z.re)
    }

    pub fn imag_part(&self) -> Mat3 {
        self.0.map(|z| z.im)
    }

    pub fn trace(&self) -> f64 {
        self.0.trace().re
    }

    /// Ascending eigenvalues.
    pub fn eigenvalues(&self) -> [f64; 3] {
        hermitian_eigenvalues_3(&self.0)
    }

    /// Number of eigenvalues whose magnitude exceeds `tol`.
    pub fn rank(&self, tol: f64) -> usize {
        self.eigenvalues().iter().filter(|l| l.abs() > tol).count()
    }

    pub fn classify(&self, tol: &Tolerances) -> GksClassification {
        let lo = self.eigenvalues()[0];
        if lo >= -tol.psd_floor {
            GksClassification::ValidMarkovian
        } else {
            GksClassification::NotPsd { min_eigenvalue: lo }
        }
    }

    pub fn max_abs_diff(&self, other: &GksMatrix) -> f64 {
        (self.0 - other.0).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Canonical generator `(h, C)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GksForm {
    pub h: HamiltonianVec,
    pub c: GksMatrix,
}

impl GksForm {
    pub fn new(h: HamiltonianVec, c: GksMatrix) -> Self {
        Self { h, c }
    }

    pub fn zero() -> Self {
        Self::new(HamiltonianVec::zero(), GksMatrix::zero())
    }
}

/// Affine Bloch-space action `r ↦ m r + b` of a generator (rates).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineGenerator {
    pub m: Mat3,
    pub b: Vec3,
}

impl AffineGenerator {
    pub fn new(m: Mat3, b: Vec3) -> Result<Self> {
        if !m.iter().chain(b.iter()).all(|x| x.is_finite()) {
            return Err(Error::usage("non-finite affine generator entry"));
        }
        Ok(Self { m, b })
    }

    pub fn zero() -> Self {
        Self { m: Mat3::zeros(), b: Vec3::zeros() }
    }

    pub fn apply(&self, r: &Vec3) -> Vec3 {
        self.m * r + self.b
    }

    pub fn max_abs_diff(&self, other: &AffineGenerator) -> f64 {
        (self.m - other.m).amax().max((self.b - other.b).amax())
    }
}

/// Evaluates the GKS form on a density matrix. The result is traceless Hermitian.
pub fn apply_generator(g: &GksForm, rho: &DensityMatrix) -> CMatrix {
    let sigma = pauli_xyz();
    let r = rho.matrix();
    let h = g.h.matrix();
    let i = c(0.0, 1.0);
    let mut out = -(&h * r - r * &h) * i;
    for a in 0..3 {
        for b in 0..3 {
            let cab = g.c.0[(a, b)];
            if cab == c(0.0, 0.0) {
                continue;
            }
            let sa_r = &sigma[a] * r;
            let r_sb = r * &sigma[b];
            let term = (&sa_r * &sigma[b] - &sigma[b] * &sa_r) + (&sigma[a] * &r_sb - &r_sb * &sigma[a]);
            out += term * (cab * 0.5);
        }
    }
    out
}

/// Cross-product matrix `[h]ₓ` with `[h]ₓ r = h × r`.
fn cross_matrix(h: &Vec3) -> Mat3 {
    Mat3::new(0.0, -h.z, h.y, h.z, 0.0, -h.x, -h.y, h.x, 0.0)
}

/// GKS form to affine form.
pub fn affine_from_gks(g: &GksForm) -> AffineGenerator {
    let cm = &g.c.0;
    let e = |i: usize, j: usize| cm[(i, j)];
    let mut sym = Mat3::zeros();
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        sym[(i, i)] = -2.0 * (e(j, j) + e(k, k)).re;
        sym[(i, j)] = (e(i, j) + e(j, i)).re;
        sym[(j, i)] = sym[(i, j)];
    }
    let two_i = c(0.0, 2.0);
    // imaginary residue is zero up to the Hermiticity tolerance of GksMatrix
    let b = Vec3::new(
        (two_i * (e(1, 2) - e(2, 1))).re,
        (two_i * (e(2, 0) - e(0, 2))).re,
        (two_i * (e(0, 1) - e(1, 0))).re,
    );
    AffineGenerator { m: cross_matrix(g.h.vector()) + sym, b }
}

/// Affine form to GKS form: the unique `(h, C)` with Hermitian `C` whose
/// affine image is `a`. `C` need not be positive; see [`validate_gks`].
pub fn gks_from_affine(a: &AffineGenerator) -> GksForm {
    let m = &a.m;
    let h = Vec3::new(
        0.5 * (m[(2, 1)] - m[(1, 2)]),
        0.5 * (m[(0, 2)] - m[(2, 0)]),
        0.5 * (m[(1, 0)] - m[(0, 1)]),
    );
    let s = (m + m.transpose()) * 0.5;
    // −2(C_jj + C_kk) = s_ii  ⇒  C_ii = T + s_ii/2 with T = ΣC_jj = −tr(s)/4
    let total = -s.trace() / 4.0;
    let mut re = Mat3::zeros();
    for i in 0..3 {
        re[(i, i)] = total + 0.5 * s[(i, i)];
        for j in 0..3 {
            if i != j {
                re[(i, j)] = 0.5 * s[(i, j)];
            }
        }
    }
    // b_k = 2i(C_ij − C_ji) = −4 Im C_ij for cyclic (i, j, k)
    let mut im = Mat3::zeros();
    for (k, (i, j)) in [(1, 2), (2, 0), (0, 1)].into_iter().enumerate() {
        im[(i, j)] = -0.25 * a.b[k];
        im[(j, i)] = 0.25 * a.b[k];
    }
    let cm = CMat3::from_fn(|i, j| c(re[(i, j)], im[(i, j)]));
    GksForm { h: HamiltonianVec(h), c: GksMatrix(cm) }
}

/// Positivity verdict for a Hermitian candidate GKS matrix.
pub fn validate_gks(candidate: &CMat3) -> Result<GksClassification> {
    validate_gks_with(candidate, &Tolerances::DEFAULT)
}

pub fn validate_gks_with(candidate: &CMat3, tol: &Tolerances) -> Result<GksClassification> {
    Ok(GksMatrix::with_tolerances(*candidate, tol)?.classify(tol))
}

/// `b = 0`, i.e. the generator fixes the maximally mixed state.
pub fn is_unital(a: &AffineGenerator) -> bool {
    a.b.norm() <= Tolerances::DEFAULT.unital
}

/// `R C Rᵀ`: the GKS matrix of a generator conjugated by the unitary whose
/// adjoint rotation is `R`.
pub fn conjugate_gks(cm: &GksMatrix, r: &Mat3) -> Result<GksMatrix> {
    if !is_rotation(r, Tolerances::DEFAULT.rotation) {
        return Err(Error::usage("conjugation matrix is not a proper rotation"));
    }
    let rc = complexify(r);
    let out = rc * cm.0 * rc.transpose();
    // exact Hermitian symmetrization removes rounding asymmetry
    Ok(GksMatrix((out + out.adjoint()) * c(0.5, 0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{bloch_components, BlochVector};
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_2;

    fn z_damping() -> GksForm {
        GksForm::new(HamiltonianVec::zero(), GksMatrix::diagonal([0.0, 0.0, 1.0]))
    }

    fn decay_gks() -> GksMatrix {
        // C₁₁ = C₂₂ = ½, C₁₂ = i/2: PSD with eigenvalues {0, 0, 1}
        let mut m = CMat3::zeros();
        m[(0, 0)] = c(0.5, 0.0);
        m[(1, 1)] = c(0.5, 0.0);
        m[(0, 1)] = c(0.0, 0.5);
        m[(1, 0)] = c(0.0, -0.5);
        GksMatrix::new(m).unwrap()
    }

    fn state(x: f64, y: f64, z: f64) -> DensityMatrix {
        DensityMatrix::from_bloch(&BlochVector::new(x, y, z).unwrap())
    }

    #[test]
    fn null_generator_gives_zero() {
        let out = apply_generator(&GksForm::zero(), &state(0.3, 0.1, -0.2));
        assert!(out.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn hamiltonian_rotates_x_towards_y() {
        let w = 0.7;
        let g = GksForm::new(HamiltonianVec::new(Vec3::new(0.0, 0.0, w)).unwrap(), GksMatrix::zero());
        let img = bloch_components(&apply_generator(&g, &state(1.0, 0.0, 0.0)));
        assert!((img - Vec3::new(0.0, w, 0.0)).amax() < 1e-15);
        let a = affine_from_gks(&g);
        assert_eq!(a.m, Mat3::new(0.0, -w, 0.0, w, 0.0, 0.0, 0.0, 0.0, 0.0));
        assert_eq!(a.b, Vec3::zeros());
    }

    #[test]
    fn z_damping_affine_form() {
        let img = bloch_components(&apply_generator(&z_damping(), &state(1.0, 0.0, 0.0)));
        assert!((img - Vec3::new(-2.0, 0.0, 0.0)).amax() < 1e-15);
        let a = affine_from_gks(&z_damping());
        assert_eq!(a.m, Mat3::from_diagonal(&Vec3::new(-2.0, -2.0, 0.0)));
        assert_eq!(a.b, Vec3::zeros());
    }

    #[test]
    fn decay_generator_is_inhomogeneous() {
        let g = GksForm::new(HamiltonianVec::zero(), decay_gks());
        let a = affine_from_gks(&g);
        assert_eq!(a.b, Vec3::new(0.0, 0.0, -2.0));
        assert_eq!(a.m, Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, -2.0)));
        assert!(!is_unital(&a));
        // fixed point is the south pole
        assert!(a.apply(&Vec3::new(0.0, 0.0, -1.0)).amax() < 1e-15);
        // brute-force Bloch image agrees
        let rho = state(0.2, -0.4, 0.5);
        let img = bloch_components(&apply_generator(&g, &rho));
        assert!((img - a.apply(rho.bloch().vector())).amax() < 1e-15);
    }

    #[test]
    fn inverse_examples() {
        let iso = gks_from_affine(&AffineGenerator::new(-Mat3::identity(), Vec3::zeros()).unwrap());
        assert_eq!(*iso.h.vector(), Vec3::zeros());
        assert!(iso.c.max_abs_diff(&GksMatrix::diagonal([0.25; 3])) < 1e-16);

        let zd = gks_from_affine(&AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-2.0, -2.0, 0.0)), Vec3::zeros()).unwrap());
        assert!(zd.c.max_abs_diff(&GksMatrix::diagonal([0.0, 0.0, 1.0])) < 1e-16);

        let zero = gks_from_affine(&AffineGenerator::zero());
        assert_eq!(zero, GksForm::zero());

        let decay = gks_from_affine(&AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-1.0, -1.0, -2.0)), Vec3::new(0.0, 0.0, -2.0)).unwrap());
        assert!(decay.c.max_abs_diff(&decay_gks()) < 1e-16);
    }

    #[test]
    fn validation_verdicts() {
        assert_eq!(validate_gks(GksMatrix::diagonal([0.0, 0.0, 1.0]).matrix()).unwrap(), GksClassification::ValidMarkovian);
        assert!(matches!(
            validate_gks(GksMatrix::diagonal([-0.1, 1.0, 1.0]).matrix()).unwrap(),
            GksClassification::NotPsd { min_eigenvalue } if (min_eigenvalue + 0.1).abs() < 1e-14
        ));
        let mut skew = CMat3::zeros();
        skew[(0, 1)] = c(1.0, 0.0);
        assert!(matches!(validate_gks(&skew), Err(Error::Usage(_))));
    }

    #[test]
    fn unitality_examples() {
        let a = AffineGenerator::new(Mat3::from_diagonal(&Vec3::new(-2.0, -2.0, 0.0)), Vec3::zeros()).unwrap();
        assert!(is_unital(&a));
        assert!(gks_from_affine(&a).c.imag_part().amax() == 0.0);
        let b = AffineGenerator::new(Mat3::new(1.0, 2.0, 3.0, 4.0, 5.0, 6.0, 7.0, 8.0, 9.0), Vec3::new(0.0, 0.0, -2.0)).unwrap();
        assert!(!is_unital(&b));
    }

    #[test]
    fn conjugation_examples() {
        let cz = GksMatrix::diagonal([0.0, 0.0, 1.0]);
        assert_eq!(conjugate_gks(&cz, &Mat3::identity()).unwrap(), cz);
        let (s, co) = FRAC_PI_2.sin_cos();
        let ry = Mat3::new(co, 0.0, s, 0.0, 1.0, 0.0, -s, 0.0, co);
        let cx = conjugate_gks(&cz, &ry).unwrap();
        assert!(cx.max_abs_diff(&GksMatrix::diagonal([1.0, 0.0, 0.0])) < 1e-15);
        let reflection = Mat3::from_diagonal(&Vec3::new(1.0, 1.0, -1.0));
        assert!(conjugate_gks(&cz, &reflection).is_err());
        assert!(conjugate_gks(&cz, &(Mat3::identity() * 2.0)).is_err());
    }

    fn arb_vec3(scale: f64) -> impl Strategy<Value = Vec3> {
        prop::array::uniform3(-scale..scale).prop_map(|a| Vec3::new(a[0], a[1], a[2]))
    }

    fn arb_psd_gks() -> impl Strategy<Value = GksMatrix> {
        prop::array::uniform18(-1.0..1.0f64).prop_map(|v| {
            let a = CMat3::from_fn(|i, j| c(v[3 * i + j], v[9 + 3 * i + j]));
            let m = a * a.adjoint();
            GksMatrix::new((m + m.adjoint()) * c(0.5, 0.0)).unwrap()
        })
    }

    proptest! {
        #[test]
        fn generator_output_is_traceless(h in arb_vec3(2.0), cm in arb_psd_gks(), r in arb_vec3(0.57)) {
            let g = GksForm::new(HamiltonianVec::new(h).unwrap(), cm);
            let out = apply_generator(&g, &state(r.x, r.y, r.z));
            prop_assert!(out.trace().norm() <= 1e-11);
            prop_assert!(crate::linalg::is_hermitian(&out, 1e-11));
        }

        #[test]
        fn gks_round_trip(h in arb_vec3(2.0), cm in arb_psd_gks()) {
            let g = GksForm::new(HamiltonianVec::new(h).unwrap(), cm);
            let back = gks_from_affine(&affine_from_gks(&g));
            prop_assert!((back.h.vector() - g.h.vector()).amax() <= 1e-12);
            prop_assert!(back.c.max_abs_diff(&g.c) <= 1e-12);
        }

        #[test]
        fn affine_round_trip(m in prop::array::uniform9(-3.0..3.0f64), b in arb_vec3(3.0)) {
            let a = AffineGenerator::new(Mat3::from_row_slice(&m), b).unwrap();
            prop_assert!(affine_from_gks(&gks_from_affine(&a)).max_abs_diff(&a) <= 1e-12);
            prop_assert_eq!(is_unital(&a), gks_from_affine(&a).c.imag_part().amax() <= 1e-10);
        }

        #[test]
        fn conjugation_preserves_spectrum(cm in arb_psd_gks(), axis in arb_vec3(1.0), angle in 0.0..std::f64::consts::TAU) {
            prop_assume!(axis.norm() > 1e-3);
            let r = *nalgebra::Rotation3::from_axis_angle(&nalgebra::Unit::new_normalize(axis), angle).matrix();
            let out = conjugate_gks(&cm, &r).unwrap();
            let (e0, e1) = (cm.eigenvalues(), out.eigenvalues());
            for k in 0..3 {
                prop_assert!((e0[k] - e1[k]).abs() <= 1e-10);
            }
            prop_assert!((cm.trace() - out.trace()).abs() <= 1e-10);
        }
    }
}
