use std::fmt;

use serde::{Deserialize, Serialize};

use super::{c, hermitian_eigenvalues_2, identity, is_hermitian, pauli_xyz, CMatrix, CVector, Vec3};
use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Bloch-ball image of a qubit state, `r_i = tr(ρ σ_i)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct BlochVector(Vec3);

impl BlochVector {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        Self::from_vec3(Vec3::new(x, y, z))
    }

    pub fn from_vec3(r: Vec3) -> Result<Self> {
        Self::with_tolerances(r, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(r: Vec3, tol: &Tolerances) -> Result<Self> {
        if !r.iter().all(|x| x.is_finite()) {
            return Err(Error::InvalidState(format!("non-finite Bloch vector {:?}", r.as_slice())));
        }
        let norm = r.norm();
        if norm > 1.0 + tol.bloch_radius {
            return Err(Error::InvalidState(format!("Bloch vector norm {norm} exceeds 1")));
        }
        Ok(Self(r))
    }

    pub fn origin() -> Self {
        Self(Vec3::zeros())
    }

    pub fn vector(&self) -> &Vec3 {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }

    pub fn to_array(self) -> [f64; 3] {
        [self.0.x, self.0.y, self.0.z]
    }
}

impl TryFrom<[f64; 3]> for BlochVector {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        Self::new(v[0], v[1], v[2])
    }
}

impl From<BlochVector> for [f64; 3] {
    fn from(b: BlochVector) -> Self {
        b.to_array()
    }
}

impl fmt::Display for BlochVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.0.x, self.0.y, self.0.z)
    }
}

/// A single-qubit density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(CMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, &Tolerances::DEFAULT)
    }

    pub fn with_tolerances(m: CMatrix, tol: &Tolerances) -> Result<Self> {
        if m.shape() != (2, 2) {
            return Err(Error::InvalidState(format!("density matrix must be 2x2, got {:?}", m.shape())));
        }
        if m.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        if !is_hermitian(&m, tol.hermitian) {
            return Err(Error::InvalidState("matrix is not Hermitian".into()));
        }
        let tr = m.trace();
        if (tr - c(1.0, 0.0)).norm() > tol.trace {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let lo = hermitian_eigenvalues_2(&m)[0];
        if lo < -tol.psd_floor {
            return Err(Error::InvalidState(format!("negative eigenvalue {lo}")));
        }
        Ok(Self(m))
    }

    /// `½(1 + r·σ)`; always valid because `r` lies in the ball.
    pub fn from_bloch(r: &BlochVector) -> Self {
        let [sx, sy, sz] = pauli_xyz();
        let v = r.vector();
        let m = (identity(2) + sx * c(v.x, 0.0) + sy * c(v.y, 0.0) + sz * c(v.z, 0.0)) * c(0.5, 0.0);
        Self(m)
    }

    /// `|ψ⟩⟨ψ|` for a (not necessarily normalized) ket.
    pub fn pure(ket: &CVector) -> Result<Self> {
        let norm = ket.norm();
        if ket.len() != 2 || norm == 0.0 {
            return Err(Error::InvalidState("ket must be a nonzero 2-vector".into()));
        }
        let k = ket / c(norm, 0.0);
        Self::new(&k * k.adjoint())
    }

    /// `|bit⟩⟨bit|`.
    pub fn pure_basis(bit: usize) -> Self {
        let mut m = CMatrix::zeros(2, 2);
        m[(bit & 1, bit & 1)] = c(1.0, 0.0);
        Self(m)
    }

    pub fn maximally_mixed() -> Self {
        Self(identity(2) * c(0.5, 0.0))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        hermitian_eigenvalues_2(&self.0)
    }

    pub fn bloch(&self) -> BlochVector {
        // |r| ≤ 1 follows from positivity up to rounding
        BlochVector(bloch_components(&self.0))
    }
}

/// `r_i = Re tr(m σ_i)` for any 2×2 matrix; used for traceless generator outputs too.
pub fn bloch_components(m: &CMatrix) -> Vec3 {
    let [sx, sy, sz] = pauli_xyz();
    Vec3::new((m * sx).trace().re, (m * sy).trace().re, (m * sz).trace().re)
}

pub fn bloch_from_density(rho: &DensityMatrix) -> BlochVector {
    rho.bloch()
}

pub fn density_from_bloch(r: &Vec3) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_bloch(&BlochVector::from_vec3(*r)?))
}
