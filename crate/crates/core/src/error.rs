use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid order m = {0}: must satisfy 1 <= m <= 30")]
    InvalidOrder(u32),
    #[error("invalid modulus q = {0}: must be at least 2")]
    InvalidModulus(u32),
    #[error("dimension mismatch: expected {expected} symbols, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("symbol {symbol} out of range for modulus {q}")]
    SymbolOutOfRange { symbol: u64, q: u32 },
    #[error("length mismatch: expected {expected} samples, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("non-finite input sample")]
    NonFiniteInput,
    #[error("operation counting requires q = 2^h, got q = {0}")]
    UnsupportedModulus(u32),
    #[error("enumeration of {size} codewords exceeds cap of {cap}")]
    EnumerationCapExceeded { size: u128, cap: u64 },
    #[error("coset list is empty")]
    EmptyCosetList,
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
