use thiserror::Error;

/// Errors surfaced by the library.
///
/// Structural misuse of the ring types (mixing discriminants, mismatched
/// truncation orders, non-conformable shapes) panics instead: those are
/// invariant violations, not recoverable inputs.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown or unsupported Coxeter type: {0}")]
    InvalidType(String),

    #[error("generator index {index} out of range 1..={rank}")]
    GeneratorOutOfRange { index: i64, rank: usize },

    #[error("word parse error at token {pos}: {msg}")]
    WordParse { pos: usize, msg: String },

    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCap { order: u128, cap: u128 },

    #[error("matrix is not invertible: {0}")]
    NotInvertible(String),

    #[error("determinant is not a unit monomial: {0}")]
    NonUnitDeterminant(String),

    #[error("representation table parse error: {0}")]
    TableParse(String),

    #[error("table dimension {found} does not match reflection count {expected}")]
    TableDimension { expected: usize, found: usize },

    #[error("representation table failed validation: {0}")]
    TableValidation(String),

    #[error("no representation table available for {type_name}: {hint}")]
    MissingTable { type_name: String, hint: String },

    #[error("folding {from_type} -> {to_type} is not verified; refusing to transport words")]
    UnverifiedFolding { from_type: String, to_type: String },

    #[error("word is not pure: {obstruction}")]
    NotPure { obstruction: String },

    #[error("invalid request: {0}")]
    Invalid(String),

    #[error("type mismatch: expected {expected}, found {found}")]
    TypeMismatch { expected: String, found: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
