use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("modulus {0} is not an odd prime in the supported range")]
    BadModulus(u32),
    #[error("parameter error: {0}")]
    Parameter(String),
    #[error("alphabet mismatch: expected p = {expected}, got p = {got}")]
    AlphabetMismatch { expected: u32, got: u32 },
    #[error("depth {requested} exceeds the expansion cap {cap}")]
    DepthCap { requested: usize, cap: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("serialization error: {0}")]
    Serde(#[from] serde_json::Error),
}
