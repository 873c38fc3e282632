use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LatticeError {
    #[error("dimension error: {0}")]
    Dimension(String),
    #[error("cell {0} lies outside the box")]
    OutsideBox(String),
    #[error("invalid direction list {0:?}: {1}")]
    BadDirections(Vec<usize>, String),
    #[error("invalid path: {0}")]
    InvalidPath(String),
    #[error("path has no rectangle descriptor")]
    MissingRectangle,
    #[error("density {0} is not in [0, 1]")]
    Density(f64),
    #[error("group order must be at least 2, got {0}")]
    GroupOrder(u32),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, LatticeError>;
