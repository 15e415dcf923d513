use std::path::PathBuf;

/// Errors raised by the library.
///
/// Variants that describe a mathematical surprise (more than two rightmost
/// squares at a position, a 2FS pair with a forbidden length ordering, ...)
/// are reportable findings rather than bugs in the caller.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("empty word has no primitivity")]
    EmptyWord,

    #[error("invalid character {ch:?} at offset {offset}: words use lowercase letters a-z")]
    InvalidCharacter { ch: char, offset: usize },

    #[error("symbol code {0} has no textual letter (alphabet capped at 26 for I/O)")]
    NotPrintable(u8),

    #[error("no Lemma 1 factorization: |sq| = {sq_len} is a multiple of the period {period}")]
    NoFactorization { sq_len: usize, period: usize },

    #[error("not an FS-double square shape (sq_len {sq_len}, SQ_len {big_len}): {reason}")]
    NotFsShape {
        sq_len: usize,
        big_len: usize,
        reason: &'static str,
    },

    #[error("position {position} has {count} rightmost distinct squares (an FS-double square needs exactly two)")]
    TooManyRightmost { position: usize, count: usize },

    #[error("FS-double square at position {position} violates its invariants: {reason}")]
    InvalidFsDoubleSquare {
        position: usize,
        reason: &'static str,
    },

    #[error("unclassifiable pair of FS-double squares at positions {first} and {second}")]
    UnclassifiablePair { first: usize, second: usize },

    #[error("mate classification needs the second square after the first ({first} >= {second})")]
    MateOrder { first: usize, second: usize },

    #[error(
        "forbidden 2FS shape at position {position}: |sq_1|={sq1}, |SQ_1|={big1}, |sq_2|={sq2}, |SQ_2|={big2}"
    )]
    Forbidden2Fs {
        position: usize,
        sq1: usize,
        big1: usize,
        sq2: usize,
        big2: usize,
    },

    #[error("check expects a {expected} 2FS square")]
    WrongTwoFsKind { expected: &'static str },

    #[error("seed is not a single FS-double square SQ^2: {0}")]
    BadSeed(&'static str),

    #[error("no equal extension: lcp(x1x2, x2x1) is empty")]
    NoEqualExtension,

    #[error("unequal extension needs an alphabet of at least two letters")]
    UnaryAlphabet,

    #[error("no unequal extension found within budget ({budget} candidates)")]
    BudgetExhausted { budget: usize },

    #[error("invalid sweep configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "sweep cost {cost} exceeds the ceiling {ceiling}; pass an explicit override to run it anyway"
    )]
    CostCeiling { cost: u64, ceiling: u64 },

    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },

    #[error("sweep interrupted after {completed} blocks; resume from the checkpoint")]
    Interrupted { completed: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Errors that would contradict a proven claim rather than signal bad
    /// input or I/O trouble.
    pub fn is_finding(&self) -> bool {
        matches!(
            self,
            Error::TooManyRightmost { .. }
                | Error::InvalidFsDoubleSquare { .. }
                | Error::UnclassifiablePair { .. }
                | Error::Forbidden2Fs { .. }
                | Error::BudgetExhausted { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
