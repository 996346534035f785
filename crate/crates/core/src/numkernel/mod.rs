//! Dense complex linear algebra used by every other module.
//!
//! Everything here works on small matrices (tens of rows), so the solvers
//! favour accuracy over asymptotic speed: cyclic Jacobi for Hermitian
//! eigenproblems and one-sided Jacobi for the SVD.

mod eig;
mod matrix;
mod spd;
mod svd;

pub use eig::{hermitian_eig, hermitian_eigenvalues, HermitianEig};
pub use matrix::{dot, norm, Matrix};
pub use spd::{inv_sqrt_psd, rank_threshold, solve_spd};
pub use svd::{svd, Svd};

/// Field scalar. Real inputs simply carry a zero imaginary part.
pub type Scalar = num_complex::Complex64;

/// Absolute floor under every relative spectral tolerance.
pub const ABS_FLOOR: f64 = 1e-12;

pub(crate) fn real(x: f64) -> Scalar {
    Scalar::new(x, 0.0)
}
