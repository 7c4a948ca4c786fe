use thiserror::Error;

/// Errors reported by the index library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty text")]
    EmptyText,
    #[error("empty pattern")]
    EmptyPattern,
    #[error("empty input")]
    EmptyInput,
    #[error("position {pos} out of range [1, {len}]")]
    PositionOutOfRange { pos: usize, len: usize },
    #[error("fragment [{i}, {j}] out of range for length {len}")]
    RangeOutOfBounds { i: usize, j: usize, len: usize },
    #[error("incompatible fingerprint contexts")]
    IncompatibleContexts,
    #[error("fingerprint context is not over this text")]
    ForeignContext,
    #[error("string shorter than one window")]
    ShorterThanWindow,
    #[error("text shorter than window")]
    TextShorterThanWindow,
    #[error("invalid minimizer parameters: w={w}, k={k}")]
    InvalidMinimizerParams { w: usize, k: usize },
    #[error("invalid anchor scheme: ell={ell}, r={r}")]
    InvalidScheme { ell: usize, r: usize },
    #[error("alphabet must have at least two letters")]
    AlphabetTooSmall,
    #[error("block must cover two windows")]
    BlockTooShort,
    #[error("window length mismatch: expected {expected}, got {got}")]
    WindowLengthMismatch { expected: usize, got: usize },
    #[error("pattern shorter than ℓ")]
    PatternTooShort,
    #[error("foreign anchor set")]
    ForeignAnchorSet,
    #[error("index built without grid")]
    NoGrid,
    #[error("grid coordinates must be permutations")]
    NotPermutation,
    #[error("index/text mismatch: index has n={index_n}, text has n={text_n}")]
    TextMismatch { index_n: usize, text_n: usize },
    #[error("malformed index file: {0}")]
    Format(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
