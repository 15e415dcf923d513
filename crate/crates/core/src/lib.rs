//! Rightmost distinct squares in words.
//!
//! For a word `w = a_1 ... a_n`, `s_i` counts the distinct squares whose last
//! occurrence starts at position `i`; it is always 0, 1 or 2. Positions with
//! `s_i = 2` carry an FS-double square. This crate computes the census,
//! factorizes and classifies FS-double squares and 2FS squares, builds words
//! with long runs of `s_i = 2`, and sweeps all small words to check the
//! structural claims about them.

pub mod analysis;
pub mod error;
pub mod fsds;
pub mod generators;
pub mod lce;
pub mod search;
pub mod squares;
pub mod twofs;
pub mod word;

pub use analysis::{analyze, Analysis, Finding, Property};
pub use error::{Error, Result};
pub use fsds::{
    canonical_factorization, classify_mate, find_fs_double_squares, Factorization, FsDoubleSquare,
    MateClassification, MateLabel,
};
pub use generators::{
    build_run, extend_equal_run, extend_unequal, ratio_report, RunReport, UnequalOptions, Variant,
};
pub use lce::LceTable;
pub use search::{
    exhaustive_verify, extremal_ratio, minimal_2fs_length, CostLimit, SweepConfig, SweepReport,
};
pub use squares::{
    enumerate_squares, longest_run_of_twos, rightmost_map, s_sequence, CensusReport, RunOfTwos,
    SquareOccurrence,
};
pub use twofs::{check_equal_2fs, check_unequal_2fs, find_2fs, TwoFsClassification, TwoFsKind};
pub use word::{are_conjugate, is_primitive, lcp, primitive_root, Word};
