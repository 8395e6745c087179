use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("invalid pyramid: {0}")]
    InvalidPyramid(String),
    #[error("invalid tableau: {0}")]
    InvalidTableau(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("elements belong to different algebra contexts")]
    ContextMismatch,
    #[error("generator e[{0},{1}] is not in this context")]
    NotInContext(usize, usize),
    #[error("e[{0},{1}] is not a root vector of the nilradical m")]
    NotMRoot(usize, usize),
    #[error("tableau is not column connected; the character is undefined")]
    NotColumnConnected,
    #[error("size guard exceeded: {0}")]
    GuardExceeded(String),
    #[error("insufficient degree bound: {0}")]
    InsufficientBound(String),
    #[error("module check failed: {0}")]
    ModuleCheck(String),
    #[error("characteristic {0} is not supported here")]
    UnsupportedCharacteristic(u64),
}

pub type Result<T> = core::result::Result<T, Error>;
