use thiserror::Error;

use crate::word::Pos;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("position {pos} is out of range for a word of length {len}")]
    OutOfRange { pos: Pos, len: u64 },
    #[error("lazy word has no value at position {0} yet")]
    NotGenerated(Pos),
    #[error("operation is undefined on lazy words")]
    LazyUnsupported,
    #[error("words of different shapes cannot be compared: {0}")]
    ShapeMismatch(String),
    #[error("invalid closed-form word: {0}")]
    InvalidClosedForm(String),
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("unknown symbol {0:?}")]
    UnknownSymbol(String),
    #[error("symbol {0} is not in the alphabet")]
    SymbolOutsideAlphabet(u64),
    #[error("word is not injective")]
    NotInjective,
    #[error("length {len} exceeds the exhaustive-search bound {max}")]
    TooLong { len: u64, max: u64 },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DictError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("word does not fit the dictionary: {0}")]
    Mismatch(String),
    #[error("index {index} is out of range for a dictionary of {size} words")]
    IndexOutOfRange { index: u64, size: u64 },
    #[error("enumeration of {0} is too large to materialize")]
    TooLarge(String),
    #[error("invalid dictionary: {0}")]
    Invalid(String),
    #[error("dictionary descriptor: {0}")]
    Descriptor(String),
}
