//! Seeded random inputs for the verification suite.
//!
//! Every case draws from its own ChaCha8 stream seeded with
//! `seed ^ (check_id << 32) ^ case_index`, so results do not depend on
//! evaluation order and are identical across platforms.

use std::f64::consts::TAU;

use nalgebra::{Quaternion, UnitQuaternion};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::generator::{CMat3, GksForm, GksMatrix, HamiltonianVec};
use crate::linalg::{c, BlochVector, DensityMatrix, Mat3, Vec3};
use crate::processor::{EulerAngles, ProgramState};
use crate::teleport::BellProgram;

pub type CaseRng = ChaCha8Rng;

pub fn case_rng(seed: u64, check_id: u32, case: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed ^ ((check_id as u64) << 32) ^ case)
}

/// Uniform in the closed Bloch ball, by rejection from the cube.
pub fn bloch_vector(rng: &mut impl Rng) -> BlochVector {
    loop {
        let v = Vec3::from_fn(|_, _| rng.random_range(-1.0..=1.0));
        if v.norm_squared() <= 1.0 {
            return BlochVector::from_vec3(v).expect("inside the ball");
        }
    }
}

pub fn state(rng: &mut impl Rng) -> DensityMatrix {
    DensityMatrix::from_bloch(&bloch_vector(rng))
}

/// Each angle uniform on `[0, 2π)`.
pub fn euler_angles(rng: &mut impl Rng) -> EulerAngles {
    EulerAngles::new(rng.random_range(0.0..TAU), rng.random_range(0.0..TAU), rng.random_range(0.0..TAU))
        .expect("finite")
}

pub fn program(rng: &mut impl Rng) -> ProgramState {
    ProgramState::new(rng.random_range(0.0..=1.0), rng.random_range(0.0..TAU)).expect("in range")
}

/// `h` uniform in `[−1, 1]³` and `C = A A†` with complex entries of `A`
/// uniform in the unit square.
pub fn gks_form(rng: &mut impl Rng) -> GksForm {
    let h = Vec3::from_fn(|_, _| rng.random_range(-1.0..=1.0));
    let a = CMat3::from_fn(|_, _| c(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0)));
    let m = a * a.adjoint();
    let m = (m + m.adjoint()) * c(0.5, 0.0);
    GksForm::new(HamiltonianVec::new(h).expect("finite"), GksMatrix::new(m).expect("Hermitian"))
}

/// Normalized complex Gaussian amplitudes.
pub fn pauli_amplitudes(rng: &mut impl Rng) -> [Complex64; 3] {
    loop {
        let a: [Complex64; 3] = std::array::from_fn(|_| c(rng.sample(StandardNormal), rng.sample(StandardNormal)));
        let n = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if n > 1e-6 {
            return a.map(|z| z / n);
        }
    }
}

pub fn bell_program(rng: &mut impl Rng) -> BellProgram {
    let eps = rng.random_range(0.0..=1.0);
    BellProgram::new(eps, pauli_amplitudes(rng)).expect("normalized")
}

/// Haar-uniform rotation from a normalized Gaussian quaternion.
pub fn rotation(rng: &mut impl Rng) -> Mat3 {
    let q: [f64; 4] = std::array::from_fn(|_| rng.sample(StandardNormal));
    let u = UnitQuaternion::from_quaternion(Quaternion::new(q[0], q[1], q[2], q[3]));
    *u.to_rotation_matrix().matrix()
}
