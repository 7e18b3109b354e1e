use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a spectral matrix needs at least one row")]
    NoRows,

    #[error("row {row} is empty")]
    EmptyRow { row: usize },

    #[error("row {row} is not strictly increasing at position {index} ({prev} >= {next})")]
    NonIncreasingRow {
        row: usize,
        index: usize,
        prev: i64,
        next: i64,
    },

    #[error("entries of magnitude {max_abs} summed over {rows} rows may overflow 64-bit integers")]
    OverflowRisk { max_abs: u64, rows: usize },

    #[error(
        "row {row} has only {len} entries but {needed} labellings were requested; \
         pass the truncation acknowledgment to treat short rows as exhausted"
    )]
    TruncatedRows { row: usize, len: usize, needed: u64 },

    #[error("labelling {k} exceeds the {available} eigenvalues of the finite matrix")]
    RankBeyondSpectrum { k: u64, available: u64 },

    #[error("labelling must be at least 1")]
    ZeroRank,

    #[error("arithmetic overflow while computing {0}")]
    Overflow(&'static str),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("invalid search bounds: {0}")]
    InvalidBounds(String),

    #[error("search space estimate {estimate} exceeds the budget {budget}")]
    EstimateTooLarge { estimate: u128, budget: u128 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
