//! Finite-dimensional generalized frames (g-frames) and their weavings.
//!
//! A g-frame is a family of bounded operators `Λ_m : H → H_m` whose summed
//! coefficient energies `Σ ‖Λ_m h‖²` are sandwiched between `A‖h‖²` and
//! `B‖h‖²`. Here every operator is a dense block with `d` columns, so the
//! whole theory reduces to spectra of small Hermitian matrices.
//!
//! * [`numkernel`] holds the dense linear algebra (Jacobi eigen/SVD solvers,
//!   SPD solves, inverse square roots).
//! * [`gframe`] is the single-family toolkit: frame operator, optimal bounds,
//!   canonical dual, exactness, g-Riesz and g-orthonormal classification.
//! * [`weaving`] interleaves two families and computes universal bounds by
//!   exhaustive enumeration or seeded local search.
//! * [`induced`] pulls subspace frames back through the adjoints, linking
//!   g-frames to ordinary vector frames.
//! * [`papersuite`] builds the classical worked examples as finite
//!   truncations and runs a verification battery over them.
//!
//! The crate is `no_std` and only needs `alloc`.
#![cfg_attr(not(test), no_std)]
#![allow(clippy::needless_range_loop)]

extern crate alloc;

pub mod error;
pub mod gframe;
pub mod induced;
pub mod numkernel;
pub mod papersuite;
pub mod record;
pub mod weaving;

pub use error::{Error, Result};
pub use gframe::{BoundsReport, Classification, FrameOperatorResult, GFrame};
pub use induced::{SubspaceFrameSpec, VectorFamily};
pub use numkernel::{Matrix, Scalar};
pub use record::VerificationRecord;
pub use weaving::{Strategy, UniversalReport, WeavingSelection};

/// Default relative tolerance for every classification predicate.
pub const DEFAULT_TOL: f64 = 1e-8;

/// Largest block count for which universal bounds are enumerated exhaustively.
pub const DEFAULT_EXHAUSTIVE_CAP: usize = 20;
