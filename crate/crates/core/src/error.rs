use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("invalid symbol {ch:?} at position {pos}, expected '0' or '1'")]
    InvalidSymbol { pos: usize, ch: char },
    #[error("length {index} out of range for word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("position {pos} out of range for word of length {len}")]
    PositionOutOfRange { pos: usize, len: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IndexParseError {
    #[error("missing header line `n=<length>`")]
    MissingHeader,
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("expected {expected} rows after the header, found {found}")]
    RowCount { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BudgetError {
    #[error("length {n} exceeds the configured limit {limit}")]
    LengthOverLimit { n: usize, limit: usize },
}
