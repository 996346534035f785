// libm-backed float methods for no_std; redundant when std is linked.
#[allow(unused_imports)]
use num_traits::Float;
use alloc::vec::Vec;


use super::eig::{rotate_columns, rotation};
use super::{dot, norm, real, Matrix, Scalar};
use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 64;

/// Thin singular value decomposition `M = U · diag(σ) · V*`.
///
/// For an `m × n` input with `k = min(m, n)`, `U` is `m × k` and `V` is
/// `n × k`, both with orthonormal columns.
#[derive(Clone, Debug)]
pub struct Svd {
    /// Descending, non-negative.
    pub singular_values: Vec<f64>,
    pub u: Matrix,
    pub v: Matrix,
}

impl Svd {
    pub fn reconstruct(&self) -> Matrix {
        let k = self.singular_values.len();
        Matrix::from_fn(self.u.rows(), self.v.rows(), |r, c| {
            (0..k)
                .map(|i| self.u[(r, i)] * self.v[(c, i)].conj() * self.singular_values[i])
                .sum()
        })
    }
}

/// One-sided (Hestenes) Jacobi SVD.
pub fn svd(m: &Matrix) -> Result<Svd> {
    if !m.is_finite() {
        return Err(Error::NonFinite);
    }
    if m.rows() < m.cols() {
        let t = tall_svd(&m.adjoint());
        return Ok(Svd {
            singular_values: t.singular_values,
            u: t.v,
            v: t.u,
        });
    }
    Ok(tall_svd(m))
}

fn tall_svd(m: &Matrix) -> Svd {
    let (rows, n) = (m.rows(), m.cols());
    let mut w = m.clone();
    let mut v = Matrix::identity(n);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n {
            for q in p + 1..n {
                let cp = w.column(p);
                let cq = w.column(q);
                let alpha = dot(&cp, &cp).re;
                let beta = dot(&cq, &cq).re;
                let gamma = dot(&cp, &cq);
                if gamma.norm() <= 1e-15 * (alpha * beta).sqrt() || gamma.norm() <= 1e-300 {
                    continue;
                }
                rotated = true;
                let j = rotation(alpha, beta, gamma);
                rotate_columns(&mut w, p, q, &j);
                rotate_columns(&mut v, p, q, &j);
            }
        }
        if !rotated {
            break;
        }
    }

    let mut sv: Vec<(f64, usize)> = (0..n).map(|j| (norm(&w.column(j)), j)).collect();
    sv.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
    let smax = sv.first().map_or(0.0, |s| s.0);

    let mut u = Matrix::zeros(rows, n);
    let mut vout = Matrix::zeros(n, n);
    let mut deficient = Vec::new();
    for (dst, &(s, src)) in sv.iter().enumerate() {
        for r in 0..n {
            vout[(r, dst)] = v[(r, src)];
        }
        if s > 1e-14 * smax.max(1e-300) && s > 0.0 {
            for r in 0..rows {
                u[(r, dst)] = w[(r, src)] / s;
            }
        } else {
            deficient.push(dst);
        }
    }
    complete_orthonormal(&mut u, &deficient);
    Svd {
        singular_values: sv.iter().map(|s| s.0).collect(),
        u,
        v: vout,
    }
}

/// Fills the listed columns of `u` with unit vectors orthogonal to all the
/// other columns (Gram-Schmidt against the standard basis).
fn complete_orthonormal(u: &mut Matrix, missing: &[usize]) {
    let rows = u.rows();
    let mut filled: Vec<usize> = (0..u.cols()).filter(|c| !missing.contains(c)).collect();
    let mut candidate = 0;
    for &col in missing {
        while candidate < rows {
            let mut x: Vec<Scalar> = (0..rows).map(|r| real(if r == candidate { 1.0 } else { 0.0 })).collect();
            candidate += 1;
            for _ in 0..2 {
                for &f in &filled {
                    let basis = u.column(f);
                    let proj = dot(&basis, &x);
                    for (xi, bi) in x.iter_mut().zip(&basis) {
                        *xi -= proj * bi;
                    }
                }
            }
            let nx = norm(&x);
            if nx > 1e-8 {
                for r in 0..rows {
                    u[(r, col)] = x[r] / nx;
                }
                filled.push(col);
                break;
            }
        }
    }
}
