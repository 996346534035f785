use alloc::string::String;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("matrix is not Hermitian (symmetry residual {residual:e})")]
    NonHermitian { residual: f64 },
    #[error("matrix contains a non-finite entry")]
    NonFinite,
    #[error("matrix is singular to tolerance (λ_min = {lambda_min:e}, threshold {threshold:e})")]
    Singular { lambda_min: f64, threshold: f64 },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("family has no blocks")]
    Empty,
    #[error("family is not a g-frame (λ_min = {lambda_min:e}, threshold {threshold:e})")]
    NotAFrame { lambda_min: f64, threshold: f64 },
    #[error("block count mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("{n_blocks} blocks exceed the exhaustive cap {cap}")]
    TooManyBlocks { n_blocks: usize, cap: usize },
    #[error("pair is not woven (universal lower bound {lower:e})")]
    NotWoven { lower: f64 },
    #[error(
        "operator is not unitary (isometry residual {isometry:e}, surjectivity residual {surjectivity:e})"
    )]
    NotUnitary { isometry: f64, surjectivity: f64 },
    #[error("subspace frame envelope violated at block {block}: {detail}")]
    EnvelopeViolation { block: usize, detail: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = core::result::Result<T, Error>;
