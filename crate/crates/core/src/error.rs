use thiserror::Error;

use crate::oracle::Divergence;

#[derive(Debug, Error)]
pub enum Error {
    #[error("Legendre-Stirling number {{{n} {k}}} undefined: k > n")]
    StirlingDomain { n: usize, k: usize },

    #[error("inner product formula undefined for equal indices j = k = {0}")]
    EqualIndices(usize),

    #[error("invalid index selection: {0}")]
    InvalidSelection(String),

    #[error("power must be at least 1")]
    ZeroPower,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error(transparent)]
    Divergent(#[from] Divergence),

    #[error("log-squared term failed to cancel: {0}")]
    LogSquaredResidue(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
