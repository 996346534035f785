//! Test-side generators and oracles. Nothing here calls the crate's
//! numerical kernel; matrices are plain nested vectors.
#![allow(dead_code, clippy::needless_range_loop)]

use gweave_core::{GFrame, Matrix, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub type Dense = Vec<Vec<Scalar>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
}

pub fn random_block(rng: &mut ChaCha8Rng, rows: usize, d: usize) -> Matrix {
    Matrix::from_fn(rows, d, |_, _| complex(rng))
}

/// Random g-frame with `d_m` in `min_rows..=max_rows`, redrawn until the
/// frame operator is comfortably invertible.
pub fn random_gframe(rng: &mut ChaCha8Rng, d: usize, n: usize, min_rows: usize, max_rows: usize) -> GFrame {
    loop {
        let blocks: Vec<Matrix> = (0..n)
            .map(|_| {
                let r = rng.gen_range(min_rows..=max_rows);
                random_block(rng, r, d)
            })
            .collect();
        let f = GFrame::new(d, blocks).unwrap();
        let ev = eigenvalues(&to_dense(&f.frame_operator_matrix()));
        if ev[0] > 1e-2 * ev[d - 1].max(1.0) {
            return f;
        }
    }
}

/// Same row dimensions as `f`, entries moved by at most `eps` in each part.
pub fn perturb(rng: &mut ChaCha8Rng, f: &GFrame, eps: f64) -> GFrame {
    let blocks = f
        .blocks()
        .iter()
        .map(|b| {
            Matrix::from_fn(b.rows(), b.cols(), |r, c| b[(r, c)] + complex(rng) * eps)
        })
        .collect();
    GFrame::new(f.domain_dim(), blocks).unwrap()
}

pub fn to_dense(m: &Matrix) -> Dense {
    (0..m.rows()).map(|r| m.row(r).to_vec()).collect()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> Dense {
    let mut a = vec![vec![Scalar::new(0.0, 0.0); n]; n];
    for i in 0..n {
        a[i][i] = Scalar::new(rng.gen_range(-3.0..3.0), 0.0);
        for j in i + 1..n {
            let z = complex(rng);
            a[i][j] = z;
            a[j][i] = z.conj();
        }
    }
    a
}

pub fn dense_to_matrix(a: &Dense) -> Matrix {
    Matrix::from_fn(a.len(), a[0].len(), |r, c| a[r][c])
}

/// Number of eigenvalues of Hermitian `a` strictly below `x`, from the
/// signs of the `LDL*` pivots of `a − xI` (Sylvester's law of inertia).
pub fn count_below(a: &Dense, x: f64) -> usize {
    let n = a.len();
    let scale: f64 = a.iter().flatten().map(|z| z.norm()).fold(1.0, f64::max);
    let mut m: Dense = a.clone();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] -= x;
    }
    let mut negatives = 0;
    for k in 0..n {
        let mut p = m[k][k].re;
        if p.abs() < 1e-300 {
            p = -1e-15 * scale;
        }
        if p < 0.0 {
            negatives += 1;
        }
        for i in k + 1..n {
            let l = m[i][k] / p;
            for j in k + 1..n {
                let u = m[k][j];
                m[i][j] -= l * u;
            }
        }
    }
    negatives
}

/// Ascending eigenvalues by bisection on the inertia count.
pub fn eigenvalues(a: &Dense) -> Vec<f64> {
    let n = a.len();
    let radius: f64 = a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt() + 1.0;
    (0..n)
        .map(|k| {
            let (mut lo, mut hi) = (-radius, radius);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if mid == lo || mid == hi {
                    break;
                }
                if count_below(a, mid) > k {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// `Σ_{m∈σ} Λ_m*Λ_m + Σ_{m∉σ} Ω_m*Ω_m`, block 1 being bit 0 of `mask`.
pub fn weaving_operator(f: &GFrame, g: &GFrame, mask: u64) -> Dense {
    let d = f.domain_dim();
    let mut s = vec![vec![Scalar::new(0.0, 0.0); d]; d];
    for m in 0..f.len() {
        let b = if mask >> m & 1 == 1 { f.block(m) } else { g.block(m) };
        for r in 0..b.rows() {
            for i in 0..d {
                for j in 0..d {
                    s[i][j] += b[(r, i)].conj() * b[(r, j)];
                }
            }
        }
    }
    s
}

/// `(min, max)` of `λ_min` and `λ_max` over every weaving, by bisection.
pub fn universal_by_bisection(f: &GFrame, g: &GFrame) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for mask in 0..1u64 << f.len() {
        let ev = eigenvalues(&weaving_operator(f, g, mask));
        lo = lo.min(ev[0]);
        hi = hi.max(*ev.last().unwrap());
    }
    (lo, hi)
}

fn mat_vec(a: &Dense, x: &[Scalar]) -> Vec<Scalar> {
    a.iter().map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum()).collect()
}

fn rayleigh(a: &Dense, x: &[Scalar]) -> f64 {
    let ax = mat_vec(a, x);
    let num: Scalar = x.iter().zip(&ax).map(|(u, v)| u.conj() * v).sum();
    num.re / x.iter().map(|z| z.norm_sqr()).sum::<f64>()
}

fn normalize(x: &mut [Scalar]) {
    let n = x.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    x.iter_mut().for_each(|z| *z /= n);
}

pub struct RayleighOracle {
    /// Extremes over the raw random samples.
    pub sampled: (f64, f64),
    /// Extremes after power-iteration refinement of the best samples.
    pub refined: (f64, f64),
}

/// Samples `samples` random unit vectors, keeps the extreme Rayleigh
/// quotients, then polishes the best two by power iteration on `A` and on
/// `tr(A)·I − A`. `A` must be positive semidefinite.
pub fn rayleigh_oracle(rng: &mut ChaCha8Rng, a: &Dense, samples: usize) -> RayleighOracle {
    let n = a.len();
    let mut best_lo = (f64::INFINITY, vec![]);
    let mut best_hi = (f64::NEG_INFINITY, vec![]);
    for _ in 0..samples {
        let mut x: Vec<Scalar> = (0..n).map(|_| complex(rng)).collect();
        normalize(&mut x);
        let q = rayleigh(a, &x);
        if q < best_lo.0 {
            best_lo = (q, x.clone());
        }
        if q > best_hi.0 {
            best_hi = (q, x);
        }
    }
    let trace: f64 = (0..n).map(|i| a[i][i].re).sum::<f64>() + 1.0;
    let shifted: Dense = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Scalar::new(trace, 0.0) - a[i][j] } else { -a[i][j] })
                .collect()
        })
        .collect();
    // both iterated matrices are PSD, so the wanted eigenvalue dominates
    let polish = |m: &Dense, start: &[Scalar]| {
        let mut x = start.to_vec();
        let mut last = rayleigh(m, &x);
        for _ in 0..20_000 {
            x = mat_vec(m, &x);
            normalize(&mut x);
            let q = rayleigh(m, &x);
            if (q - last).abs() <= 1e-16 * q.abs().max(1.0) {
                last = q;
                break;
            }
            last = q;
        }
        last
    };
    let hi = polish(a, &best_hi.1);
    let lo = trace - polish(&shifted, &best_lo.1);
    RayleighOracle {
        sampled: (best_lo.0, best_hi.0),
        refined: (lo, hi),
    }
}
