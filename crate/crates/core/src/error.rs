use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("arity mismatch for '{symbol}': expected {expected}, tuple has {got}")]
    ArityMismatch {
        symbol: String,
        expected: usize,
        got: usize,
    },
    #[error("element {element} out of range for universe of size {size}")]
    OutOfRange { element: usize, size: usize },
    #[error("duplicate tuple in relation '{0}'")]
    DuplicateTuple(String),
    #[error("unknown symbol '{0}'")]
    UnknownSymbol(String),
    #[error("signature mismatch")]
    SignatureMismatch,
    #[error("empty universe is not allowed")]
    EmptyUniverse,
    #[error("invalid signature: {0}")]
    InvalidSignature(String),
    #[error("table for '<' is not a strict total order")]
    NotATotalOrder,
    #[error("structure already carries an order symbol")]
    AlreadyOrdered,
    #[error("structure carries no order symbol")]
    NotOrdered,
    #[error("size mismatch: expected {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },
    #[error("not a permutation of 0..{0}")]
    NotAPermutation(usize),
    #[error("invalid embedding: {0}")]
    InvalidEmbedding(String),
    #[error("unknown class '{0}'")]
    UnknownClass(String),
    #[error("invalid class parameters: {0}")]
    InvalidClassParams(String),
    #[error("structure is not a member of class '{0}'")]
    NotAMember(String),
    #[error("search budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
