//! Sorted eigenvalues of small Hermitian matrices.

use nalgebra::Matrix3;
use num_complex::Complex64;

use super::CMatrix;

fn ascending<const N: usize>(values: impl IntoIterator<Item = f64>) -> [f64; N] {
    let mut out = [0.0; N];
    for (slot, v) in out.iter_mut().zip(values) {
        *slot = v;
    }
    out.sort_by(f64::total_cmp);
    out
}

/// Eigenvalues of a 2×2 Hermitian matrix, ascending. Only the Hermitian
/// part of `m` is read.
pub fn hermitian_eigenvalues_2(m: &CMatrix) -> [f64; 2] {
    debug_assert_eq!(m.shape(), (2, 2));
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    ascending(h.symmetric_eigenvalues().iter().copied())
}

/// Eigenvalues of a 3×3 Hermitian matrix, ascending. Only the Hermitian
/// part of `m` is read.
pub fn hermitian_eigenvalues_3(m: &Matrix3<Complex64>) -> [f64; 3] {
    let h = (m + m.adjoint()) * Complex64::new(0.5, 0.0);
    ascending(h.symmetric_eigenvalues().iter().copied())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::{DMatrix, Vector3};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn two_by_two_pauli_x() {
        let m = DMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)]);
        assert_eq!(hermitian_eigenvalues_2(&m), [-1.0, 1.0]);
    }

    #[test]
    fn diagonal_three_by_three() {
        let m = Matrix3::from_diagonal(&Vector3::new(c(-0.1, 0.), c(1., 0.), c(2., 0.)));
        let e = hermitian_eigenvalues_3(&m);
        for (got, want) in e.iter().zip([-0.1, 1.0, 2.0]) {
            assert!((got - want).abs() < 1e-14, "{e:?}");
        }
    }

    #[test]
    fn rank_one_outer_product_has_tiny_zero_eigenvalues() {
        let n = Vector3::new(0.3_f64, -0.5, 0.81).normalize();
        let m = (n * n.transpose()).map(|x| c(x, 0.));
        let e = hermitian_eigenvalues_3(&m);
        assert!(e[0].abs() < 1e-15 && e[1].abs() < 1e-15, "{e:?}");
        assert!((e[2] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn complex_hermitian_matches_trace_and_determinant() {
        let m = Matrix3::new(
            c(1.0, 0.), c(0.2, 0.3), c(-0.1, 0.05),
            c(0.2, -0.3), c(0.5, 0.), c(0.0, 0.4),
            c(-0.1, -0.05), c(0.0, -0.4), c(0.8, 0.),
        );
        let e = hermitian_eigenvalues_3(&m);
        let tr: f64 = e.iter().sum();
        let det: f64 = e.iter().product();
        assert!((tr - 2.3).abs() < 1e-13, "{tr}");
        assert!((det - m.determinant().re).abs() < 1e-13);
        // each eigenvalue makes m − λI singular
        for l in e {
            let shifted = m - Matrix3::identity() * c(l, 0.);
            assert!(shifted.determinant().norm() < 1e-12);
        }
    }

    #[test]
    fn scalar_multiple_of_identity() {
        let m = Matrix3::identity() * c(0.25, 0.);
        assert_eq!(hermitian_eigenvalues_3(&m), [0.25; 3]);
    }

    proptest::proptest! {
        #[test]
        fn spectrum_matches_trace_and_psd(v in proptest::array::uniform18(-1.0..1.0f64), rank in 1usize..=3) {
            let mut m = Matrix3::<Complex64>::zeros();
            for k in 0..rank {
                let a = Vector3::new(c(v[6 * k % 18], v[(6 * k + 1) % 18]), c(v[(6 * k + 2) % 18], v[(6 * k + 3) % 18]), c(v[(6 * k + 4) % 18], v[(6 * k + 5) % 18]));
                m += a * a.adjoint();
            }
            let got = hermitian_eigenvalues_3(&m);
            proptest::prop_assert!(got[0] <= got[1] && got[1] <= got[2]);
            proptest::prop_assert!(got[0] > -1e-13);
            proptest::prop_assert!((got.iter().sum::<f64>() - m.trace().re).abs() < 1e-12);
            if rank == 1 {
                proptest::prop_assert!(got[1].abs() < 1e-13 * got[2].max(1.0), "{got:?}");
            }
        }
    }
}
