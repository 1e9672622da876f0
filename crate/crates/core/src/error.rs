use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: left is {left:?}, right is {right:?}")]
    DimensionMismatch {
        op: &'static str,
        left: (usize, usize),
        right: (usize, usize),
    },

    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("register shapes differ: {0} vs {1}")]
    ShapeMismatch(usize, usize),

    #[error("a product composition needs at least one operand")]
    EmptyProduct,

    #[error("projection has zero probability")]
    ZeroProbability,

    #[error("dense dimension {dim} exceeds the cap of {cap}")]
    DenseCapExceeded { dim: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("unknown export format `{0}` (expected text or dot)")]
    UnknownFormat(String),

    #[error("unknown verification suite `{0}`")]
    UnknownSuite(String),

    #[error("failed to write {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}
