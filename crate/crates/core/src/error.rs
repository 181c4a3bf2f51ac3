use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("structural error: {0}")]
    Structural(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("image not contained in kernel")]
    ImageNotInKernel,
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("not a short exact sequence: {0}")]
    NotShortExact(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("base ring mismatch: {0}")]
    BaseRing(String),
}

pub type Result<T> = std::result::Result<T, Error>;
