// libm-backed float methods for no_std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;


use super::{real, Matrix, Scalar, ABS_FLOOR};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Eigen decomposition `M = V · diag(λ) · V*` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEig {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Unitary, columns match `eigenvalues`.
    pub eigenvectors: Matrix,
}

impl HermitianEig {
    pub fn min(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn max(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    /// `V · diag(f(λ)) · V*`.
    pub fn map_spectrum(&self, f: impl Fn(f64) -> f64) -> Matrix {
        let v = &self.eigenvectors;
        let n = v.rows();
        let fl: Vec<f64> = self.eigenvalues.iter().map(|&l| f(l)).collect();
        Matrix::from_fn(n, n, |r, c| {
            (0..n).map(|k| v[(r, k)] * v[(c, k)].conj() * fl[k]).sum()
        })
    }
}

fn validate(m: &Matrix) -> Result<()> {
    if !m.is_square() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "eigendecomposition of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    let residual = m.hermitian_residual();
    if residual > 1e-8 * m.frobenius_norm().max(1.0) {
        return Err(Error::NonHermitian { residual });
    }
    Ok(())
}

/// Full eigendecomposition by cyclic complex Jacobi rotations.
///
/// Eigenvalues come out ascending. Ties keep the order the sweep leaves them
/// in, and every eigenvector is rotated so that its first non-negligible
/// component is real and positive.
pub fn hermitian_eig(m: &Matrix) -> Result<HermitianEig> {
    validate(m)?;
    let n = m.rows();
    let mut a = m.hermitian_part();
    let mut v = Matrix::identity(n);
    jacobi(&mut a, Some(&mut v));

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut eigenvectors = Matrix::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        let col = v.column(src);
        let scale = col.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let pivot = col
            .iter()
            .find(|z| z.norm() > 1e-8 * scale)
            .copied()
            .unwrap_or(real(1.0));
        let phase = pivot.conj() / pivot.norm();
        let nrm = super::norm(&col);
        for (r, z) in col.iter().enumerate() {
            eigenvectors[(r, dst)] = *z * phase / nrm;
        }
    }
    Ok(HermitianEig {
        eigenvalues,
        eigenvectors,
    })
}

/// Eigenvalues only (ascending); skips eigenvector accumulation.
pub fn hermitian_eigenvalues(m: &Matrix) -> Result<Vec<f64>> {
    validate(m)?;
    let mut a = m.hermitian_part();
    jacobi(&mut a, None);
    let mut ev: Vec<f64> = (0..a.rows()).map(|i| a[(i, i)].re).collect();
    ev.sort_by(f64::total_cmp);
    Ok(ev)
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut acc = 0.0;
    for p in 0..n {
        for q in 0..n {
            if p != q {
                acc += a[(p, q)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Unitary 2x2 rotation `[[pp, pq], [qp, qq]]` that zeroes the `(p, q)` entry
/// of `J* A J` for the Hermitian pair `[[app, apq], [conj(apq), aqq]]`.
pub(super) fn rotation(app: f64, aqq: f64, apq: Scalar) -> [Scalar; 4] {
    let r = apq.norm();
    let phase = apq / r;
    let tau = (aqq - app) / (2.0 * r);
    let t = tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt());
    let c = 1.0 / (1.0 + t * t).sqrt();
    let s = t * c;
    [real(c), real(s), phase.conj() * (-s), phase.conj() * c]
}

/// Right-multiplies columns `p`, `q` of `m` by the rotation.
pub(super) fn rotate_columns(m: &mut Matrix, p: usize, q: usize, j: &[Scalar; 4]) {
    for k in 0..m.rows() {
        let xp = m[(k, p)];
        let xq = m[(k, q)];
        m[(k, p)] = xp * j[0] + xq * j[2];
        m[(k, q)] = xp * j[1] + xq * j[3];
    }
}

fn jacobi(a: &mut Matrix, mut v: Option<&mut Matrix>) {
    let n = a.rows();
    let scale = a.frobenius_norm().max(ABS_FLOOR);
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(a) <= 1e-15 * scale {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq.norm() <= 1e-300 {
                    continue;
                }
                let j = rotation(a[(p, p)].re, a[(q, q)].re, apq);
                rotate_columns(a, p, q, &j);
                for k in 0..n {
                    let xp = a[(p, k)];
                    let xq = a[(q, k)];
                    a[(p, k)] = j[0].conj() * xp + j[2].conj() * xq;
                    a[(q, k)] = j[1].conj() * xp + j[3].conj() * xq;
                }
                a[(p, q)] = real(0.0);
                a[(q, p)] = real(0.0);
                a[(p, p)].im = 0.0;
                a[(q, q)].im = 0.0;
                if let Some(v) = v.as_deref_mut() {
                    rotate_columns(v, p, q, &j);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn c(re: f64, im: f64) -> Scalar {
        Scalar::new(re, im)
    }

    fn reconstruct(e: &HermitianEig) -> Matrix {
        e.map_spectrum(|l| l)
    }

    #[test]
    fn identity_and_diagonal() {
        let e = hermitian_eig(&Matrix::identity(3)).unwrap();
        assert_eq!(e.eigenvalues, vec![1.0, 1.0, 1.0]);
        let e = hermitian_eig(&Matrix::from_diag_real(&[2.0, 0.5])).unwrap();
        assert_eq!(e.eigenvalues, vec![0.5, 2.0]);
        // first nonzero component positive
        assert_eq!(e.eigenvectors[(1, 0)], c(1.0, 0.0));
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3.
        let m = Matrix::new(2, 2, vec![c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(2.0, 0.0)]).unwrap();
        let e = hermitian_eig(&m).unwrap();
        assert!((e.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((e.eigenvalues[1] - 3.0).abs() < 1e-14);
        assert!((&reconstruct(&e) - &m).frobenius_norm() < 1e-13);
        let vv = &e.eigenvectors.adjoint() * &e.eigenvectors;
        assert!((&vv - &Matrix::identity(2)).frobenius_norm() < 1e-13);
    }

    #[test]
    fn rejects_non_hermitian_and_non_square() {
        let m = Matrix::from_real_rows(&[[1.0, 2.0], [0.0, 1.0]]).unwrap();
        assert!(matches!(hermitian_eig(&m), Err(Error::NonHermitian { .. })));
        assert!(matches!(
            hermitian_eig(&Matrix::zeros(2, 3)),
            Err(Error::ShapeMismatch(_))
        ));
    }

    #[test]
    fn eigenvalues_only_agree() {
        let m = Matrix::from_real_rows(&[[4.0, 1.0, 0.5], [1.0, 3.0, -1.0], [0.5, -1.0, 2.0]]).unwrap();
        let a = hermitian_eigenvalues(&m).unwrap();
        let b = hermitian_eig(&m).unwrap().eigenvalues;
        for (x, y) in a.iter().zip(&b) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn empty_matrix() {
        let e = hermitian_eig(&Matrix::zeros(0, 0)).unwrap();
        assert!(e.eigenvalues.is_empty());
    }
}
