use thiserror::Error;

/// Errors raised by state construction and the divergence/monotone kernels.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max |A - A^dagger| = {0:e})")]
    NonHermitian(f64),

    #[error("trace is not 1 (got {0})")]
    InvalidTrace(f64),

    #[error("matrix is not positive semi-definite (min eigenvalue {0:e})")]
    NotPsd(f64),

    #[error("state vector is not normalized (norm {0})")]
    NotNormalized(f64),

    #[error("dimension mismatch: {0} vs {1}")]
    DimMismatch(usize, usize),

    #[error("malformed matrix: {0}")]
    Malformed(String),

    #[error("rank {rank} is not in 1..={dim}")]
    BadRank { dim: usize, rank: usize },

    #[error("invalid parameters: {0}")]
    BadParams(String),

    #[error("trace kernel Tr(rho^a sigma^(1-a)) = {0:e} underflows")]
    DegenerateKernel(f64),

    #[error("trace kernel has imaginary residue {0:e}")]
    ImaginaryResidue(f64),

    #[error("unsupported stabilizer system d = {d}, n = {n}")]
    Unsupported { d: usize, n: usize },

    #[error("matrix is not unitary (max |U^dagger U - I| = {0:e})")]
    NonUnitary(f64),

    #[error("probability vector invalid: {0}")]
    BadProbabilities(String),

    #[error("linear program failed: {0}")]
    Lp(String),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
