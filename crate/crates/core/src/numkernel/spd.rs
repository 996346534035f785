// libm-backed float methods for no_std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;


use super::{hermitian_eig, real, HermitianEig, Matrix, Scalar, ABS_FLOOR};
use crate::error::{Error, Result};

/// Smallest eigenvalue accepted as nonsingular: `1e-10 · λ_max`, floored.
pub fn rank_threshold(lambda_max: f64) -> f64 {
    (1e-10 * lambda_max).max(ABS_FLOOR)
}

fn positive_definite_eig(m: &Matrix) -> Result<HermitianEig> {
    let e = hermitian_eig(m)?;
    let threshold = rank_threshold(e.max());
    if e.min() <= threshold {
        return Err(Error::Singular {
            lambda_min: e.min(),
            threshold,
        });
    }
    Ok(e)
}

/// Solves `M X = rhs` for Hermitian positive definite `M` via Cholesky.
pub fn solve_spd(m: &Matrix, rhs: &Matrix) -> Result<Matrix> {
    if rhs.rows() != m.rows() {
        return Err(Error::ShapeMismatch(alloc::format!(
            "right-hand side has {} rows, matrix is {}x{}",
            rhs.rows(),
            m.rows(),
            m.cols()
        )));
    }
    if !rhs.is_finite() {
        return Err(Error::NonFinite);
    }
    positive_definite_eig(m)?;
    let a = m.hermitian_part();
    let n = a.rows();

    // A = L L*
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 {
            return Err(Error::Singular {
                lambda_min: d,
                threshold: 0.0,
            });
        }
        let djj = d.sqrt();
        l[(j, j)] = real(djj);
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / djj;
        }
    }

    let mut x = Matrix::zeros(n, rhs.cols());
    for c in 0..rhs.cols() {
        let mut y: Vec<Scalar> = rhs.column(c);
        for i in 0..n {
            let mut s = y[i];
            for k in 0..i {
                s -= l[(i, k)] * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..n {
                s -= l[(k, i)].conj() * y[k];
            }
            y[i] = s / l[(i, i)];
        }
        for (r, val) in y.into_iter().enumerate() {
            x[(r, c)] = val;
        }
    }
    Ok(x)
}

/// Hermitian `M^{-1/2}` of a positive definite matrix.
pub fn inv_sqrt_psd(m: &Matrix) -> Result<Matrix> {
    let e = positive_definite_eig(m)?;
    Ok(e.map_spectrum(|l| 1.0 / l.sqrt()).hermitian_part())
}
