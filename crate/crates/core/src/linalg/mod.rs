//! Small dense complex matrices: Pauli algebra, Kronecker products, partial
//! traces and Kraus application for one to three qubits.
//!
//! Tensor ordering is fixed crate-wide: in `tensor(a, b)` the first factor
//! is the more significant index, so a two-qubit basis index reads
//! `(first bit) * 2 + (second bit)`. Processor code puts the program
//! register first.

mod eigen;
mod state;

pub use eigen::{hermitian_eigenvalues_2, hermitian_eigenvalues_3};
pub use state::{bloch_components, bloch_from_density, density_from_bloch, BlochVector, DensityMatrix};

use nalgebra::{DMatrix, DVector, Matrix3, Vector3};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::tolerance::Tolerances;

/// Complex square matrix of dimension 2, 4 or 8.
pub type CMatrix = DMatrix<Complex64>;
/// Complex column vector (kets).
pub type CVector = DVector<Complex64>;
/// Real 3-vector in Bloch space.
pub type Vec3 = Vector3<f64>;
/// Real 3×3 matrix acting on Bloch space.
pub type Mat3 = Matrix3<f64>;

/// Largest dimension `tensor` will build (three qubits).
pub const MAX_DIM: usize = 8;

/// Shorthand for `Complex64::new`.
pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Identity (`i = 0`) or Pauli matrix `σ_i`, with `σ₃ = diag(1, −1)`.
pub fn pauli(i: usize) -> Result<CMatrix> {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    let entries = match i {
        0 => [o, z, z, o],
        1 => [z, o, o, z],
        2 => [z, c(0.0, -1.0), c(0.0, 1.0), z],
        3 => [o, z, z, -o],
        _ => return Err(Error::usage(format!("Pauli index {i} out of range 0..=3"))),
    };
    Ok(CMatrix::from_row_slice(2, 2, &entries))
}

/// `[σ₁, σ₂, σ₃]`.
pub fn pauli_xyz() -> [CMatrix; 3] {
    [1, 2, 3].map(|i| pauli(i).expect("static index"))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

/// Entrywise max-norm of `a − b`. Shape mismatch counts as infinitely far.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    if a.shape() != b.shape() {
        return f64::INFINITY;
    }
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn is_hermitian(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(m, &m.adjoint()) <= tol
}

pub fn is_unitary(m: &CMatrix, tol: f64) -> bool {
    m.is_square() && max_abs_diff(&(m.adjoint() * m), &identity(m.nrows())) <= tol
}

/// `|ψ⟩⟨ψ|`.
pub fn projector(ket: &CVector) -> CMatrix {
    ket * ket.adjoint()
}

/// Kronecker product `a ⊗ b`; `a` is the more significant factor.
pub fn tensor(a: &CMatrix, b: &CMatrix) -> Result<CMatrix> {
    let dim = a.nrows() * b.nrows();
    if !a.is_square() || !b.is_square() || dim > MAX_DIM {
        return Err(Error::usage(format!(
            "tensor of {}x{} and {}x{} exceeds the {MAX_DIM}-dimensional limit",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    Ok(a.kronecker(b))
}

/// Traces out the first (program) qubit of a two-qubit operator.
pub fn partial_trace_first(m: &CMatrix) -> Result<CMatrix> {
    if m.shape() != (4, 4) {
        return Err(Error::usage(format!("partial_trace_first expects 4x4, got {:?}", m.shape())));
    }
    Ok(trace_out_leading(m, 2))
}

/// Traces out all leading factors, keeping the trailing `keep`-dimensional one.
pub fn trace_out_leading(m: &CMatrix, keep: usize) -> CMatrix {
    let traced = m.nrows() / keep;
    CMatrix::from_fn(keep, keep, |i, j| {
        (0..traced).map(|k| m[(k * keep + i, k * keep + j)]).sum()
    })
}

/// Checks `Σ E_k† E_k = 1` for a set of 2×2 Kraus operators.
pub fn check_completeness(ops: &[CMatrix], tol: &Tolerances) -> Result<()> {
    if ops.is_empty() {
        return Err(Error::InvalidChannel("empty Kraus set".into()));
    }
    if let Some(bad) = ops.iter().find(|e| e.shape() != (2, 2)) {
        return Err(Error::InvalidChannel(format!("Kraus operator has shape {:?}", bad.shape())));
    }
    let sum: CMatrix = ops.iter().map(|e| e.adjoint() * e).fold(CMatrix::zeros(2, 2), |acc, x| acc + x);
    let dev = max_abs_diff(&sum, &identity(2));
    if dev > tol.completeness {
        return Err(Error::InvalidChannel(format!(
            "Kraus completeness violated by {dev:.3e} (tolerance {:.1e})",
            tol.completeness
        )));
    }
    Ok(())
}

/// Applies `ρ ↦ Σ E_k ρ E_k†`.
pub fn apply_kraus(ops: &[CMatrix], rho: &DensityMatrix) -> Result<DensityMatrix> {
    apply_kraus_with(ops, rho, &Tolerances::DEFAULT)
}

pub fn apply_kraus_with(ops: &[CMatrix], rho: &DensityMatrix, tol: &Tolerances) -> Result<DensityMatrix> {
    check_completeness(ops, tol)?;
    let out = ops
        .iter()
        .map(|e| e * rho.matrix() * e.adjoint())
        .fold(CMatrix::zeros(2, 2), |acc, x| acc + x);
    // an incomplete-within-tolerance set moves the trace by up to that amount
    let relaxed = Tolerances {
        trace: tol.trace.max(4.0 * tol.completeness),
        hermitian: tol.hermitian.max(4.0 * tol.completeness),
        ..*tol
    };
    DensityMatrix::with_tolerances(out, &relaxed)
}

/// Real part of a complex 3×3 matrix.
pub fn real_part(m: &Matrix3<Complex64>) -> Mat3 {
    m.map(|z| z.re)
}

pub fn complexify(m: &Mat3) -> Matrix3<Complex64> {
    m.map(|x| c(x, 0.0))
}

/// Checks `RᵀR = 1` and `det R = 1`.
pub fn is_rotation(r: &Mat3, tol: f64) -> bool {
    let gram = r.transpose() * r - Mat3::identity();
    gram.amax() <= tol && (r.determinant() - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn basis_projector(bit: usize) -> CMatrix {
        let mut m = CMatrix::zeros(2, 2);
        m[(bit, bit)] = c(1.0, 0.0);
        m
    }

    #[test]
    fn pauli_identity_and_x() {
        assert_eq!(pauli(0).unwrap(), identity(2));
        let x = pauli(1).unwrap();
        assert_eq!(x, CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]));
    }

    #[test]
    fn pauli_y_is_an_involution() {
        let y = pauli(2).unwrap();
        assert_eq!(&y * &y, identity(2));
    }

    #[test]
    fn pauli_index_out_of_range() {
        assert!(matches!(pauli(4), Err(Error::Usage(_))));
    }

    #[test]
    fn pauli_anticommutation() {
        let s = pauli_xyz();
        for i in 0..3 {
            for j in 0..3 {
                let anti = &s[i] * &s[j] + &s[j] * &s[i];
                let want = if i == j { identity(2) * c(2.0, 0.0) } else { CMatrix::zeros(2, 2) };
                assert_eq!(anti, want, "i={i} j={j}");
            }
        }
    }

    #[test]
    fn tensor_basics() {
        assert_eq!(tensor(&identity(2), &identity(2)).unwrap(), identity(4));
        let d = tensor(&basis_projector(0), &basis_projector(1)).unwrap();
        let mut want = CMatrix::zeros(4, 4);
        want[(1, 1)] = c(1.0, 0.0);
        assert_eq!(d, want);
        let xz = tensor(&pauli(1).unwrap(), &pauli(3).unwrap()).unwrap();
        assert_eq!(xz[(0, 2)], c(1.0, 0.0));
    }

    #[test]
    fn tensor_overflow() {
        let four = identity(4);
        assert!(matches!(tensor(&four, &four), Err(Error::Usage(_))));
        assert!(tensor(&four, &identity(2)).is_ok());
    }

    #[test]
    fn partial_trace_of_bell_state_is_maximally_mixed() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let ket = CVector::from_vec(vec![c(s, 0.), c(0., 0.), c(0., 0.), c(s, 0.)]);
        let out = partial_trace_first(&projector(&ket)).unwrap();
        assert!(max_abs_diff(&out, &(identity(2) * c(0.5, 0.))) < 1e-15);
    }

    #[test]
    fn partial_trace_rejects_wrong_shape() {
        assert!(partial_trace_first(&identity(2)).is_err());
    }

    #[test]
    fn kraus_identity_and_bit_flip() {
        let rho = DensityMatrix::from_bloch(&BlochVector::new(0.2, -0.3, 0.4).unwrap());
        let same = apply_kraus(&[identity(2)], &rho).unwrap();
        assert!(max_abs_diff(same.matrix(), rho.matrix()) < 1e-15);

        let zero = DensityMatrix::pure_basis(0);
        let flipped = apply_kraus(&[pauli(1).unwrap()], &zero).unwrap();
        assert_eq!(flipped.matrix(), DensityMatrix::pure_basis(1).matrix());
    }

    #[test]
    fn kraus_dephasing_of_plus_state() {
        let h = c(0.5_f64.sqrt(), 0.0);
        let ops = [identity(2) * h, pauli(3).unwrap() * h];
        let plus = DensityMatrix::from_bloch(&BlochVector::new(1.0, 0.0, 0.0).unwrap());
        let out = apply_kraus(&ops, &plus).unwrap();
        assert!(max_abs_diff(out.matrix(), &(identity(2) * c(0.5, 0.))) < 1e-15);
    }

    #[test]
    fn kraus_incomplete_set_rejected() {
        let ops = [identity(2) * c(0.9, 0.0)];
        assert!(matches!(apply_kraus(&ops, &DensityMatrix::pure_basis(0)), Err(Error::InvalidChannel(_))));
    }

    fn arb_bloch() -> impl Strategy<Value = BlochVector> {
        (-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64)
            .prop_filter("inside ball", |(x, y, z)| x * x + y * y + z * z <= 1.0)
            .prop_map(|(x, y, z)| BlochVector::new(x, y, z).unwrap())
    }

    proptest! {
        #[test]
        fn partial_trace_recovers_second_factor(a in arb_bloch(), b in arb_bloch()) {
            let pa = DensityMatrix::from_bloch(&a);
            let pb = DensityMatrix::from_bloch(&b);
            let joint = tensor(pa.matrix(), pb.matrix()).unwrap();
            let back = partial_trace_first(&joint).unwrap();
            prop_assert!(max_abs_diff(&back, pb.matrix()) < 1e-15);
        }

        #[test]
        fn amplitude_damping_preserves_trace_and_positivity(g in 0.0..1.0f64, r in arb_bloch()) {
            let e0 = CMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c((1.0 - g).sqrt(), 0.)]);
            let e1 = CMatrix::from_row_slice(2, 2, &[c(0., 0.), c(g.sqrt(), 0.), c(0., 0.), c(0., 0.)]);
            let out = apply_kraus(&[e0, e1], &DensityMatrix::from_bloch(&r)).unwrap();
            prop_assert!((out.matrix().trace() - c(1.0, 0.0)).norm() < 1e-12);
            prop_assert!(out.eigenvalues()[0] >= -1e-10);
        }
    }
}
