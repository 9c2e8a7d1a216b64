use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("cyclic cover is not simple: {0}")]
    CoverNotSimple(String),

    #[error("invalid voltage graph: {0}")]
    InvalidVoltageGraph(String),

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    #[error("vertex index {index} out of range for {len} entries")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("divisor leading coefficient is {0}, expected +1 or -1")]
    NonMonicDivisor(String),

    #[error("argument must be nonzero")]
    ZeroArgument,

    #[error("empty coefficient list")]
    EmptyInput,

    #[error("kernel vector failed exact verification")]
    KernelVerification,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
