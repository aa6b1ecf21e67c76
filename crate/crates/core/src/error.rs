use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("mode {mode} out of range for tensor of order {order}")]
    ModeOutOfRange { mode: usize, order: usize },
    #[error("zero or near-zero input: {0}")]
    ZeroInput(&'static str),
    #[error("infeasible training design: {0}")]
    InfeasibleDesign(String),
    #[error("training matrix is not row-orthonormal (residual {0:.3e})")]
    NotOrthonormal(f64),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
