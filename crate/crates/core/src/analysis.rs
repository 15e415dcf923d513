//! The full property suite on one word.
//!
//! Every claim is evaluated independently and recorded; a violated claim
//! becomes a [`Finding`] instead of aborting the analysis.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::fsds::{
    classify_mate, fs_double_square_at, FsDoubleSquare, MateClassification, MateLabel,
};
use crate::squares::{s_sequence, CensusReport};
use crate::twofs::{classify_pair, equal_chains, EqualChain, TwoFsClassification, TwoFsKind};
use crate::word::{is_primitive, Word};

/// Named claims checked on every word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `s_i <= 2` at every position.
    SquareCap,
    /// Fewer than `2n` distinct squares.
    DistinctBound,
    /// Every position with `s_i = 2` has an exact canonical factorization.
    Factorization,
    /// Every 2FS square is equal or unequal.
    Dichotomy,
    EqualChecks,
    UnequalChecks,
    /// Adjacent FS-double squares are α or δ mates.
    Mates,
    /// `7 T < n`.
    RunBound,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::SquareCap,
        Property::DistinctBound,
        Property::Factorization,
        Property::Dichotomy,
        Property::EqualChecks,
        Property::UnequalChecks,
        Property::Mates,
        Property::RunBound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::SquareCap => "square_cap",
            Property::DistinctBound => "distinct_bound",
            Property::Factorization => "factorization",
            Property::Dichotomy => "dichotomy",
            Property::EqualChecks => "equal_checks",
            Property::UnequalChecks => "unequal_checks",
            Property::Mates => "mates",
            Property::RunBound => "run_bound",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown property {s:?}")))
    }
}

/// A violated claim on a concrete word.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Finding {
    pub word: Word,
    pub property: Property,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub position: Option<usize>,
    pub detail: String,
}

/// Mate label of the FS-double square at `position + 1` relative to the one
/// at `position`.
#[derive(Debug, Clone, Serialize)]
pub struct AdjacentMate {
    pub position: usize,
    #[serde(flatten)]
    pub mate: MateClassification,
}

#[derive(Debug, Clone, Serialize)]
pub struct Analysis {
    pub census: CensusReport,
    pub fs_double_squares: Vec<FsDoubleSquare>,
    pub two_fs: Vec<TwoFsClassification>,
    pub mates: Vec<AdjacentMate>,
    pub equal_chains: Vec<EqualChain>,
    pub findings: Vec<Finding>,
}

impl Analysis {
    pub fn longest_run(&self) -> usize {
        self.census.longest_run.length
    }
}

/// Census, FS-double squares, 2FS classification, adjacent mates, equal
/// chains and every claim about them.
pub fn analyze(w: &[u8]) -> Analysis {
    let census = s_sequence(w);
    let n = census.n();
    let word = census.word.clone();
    let mut findings = Vec::new();
    let mut finding = |property, position, detail: String| {
        findings.push(Finding {
            word: word.clone(),
            property,
            position,
            detail,
        })
    };

    if census.max_s() > 2 {
        for (i, &s) in census.s.iter().enumerate().filter(|(_, &s)| s > 2) {
            finding(Property::SquareCap, Some(i + 1), format!("s_i = {s}"));
        }
    }
    if n > 0 && census.distinct_square_count >= 2 * n {
        finding(
            Property::DistinctBound,
            None,
            format!("{} distinct squares, n = {n}", census.distinct_square_count),
        );
    }

    let mut fs = Vec::new();
    for (i, _) in census.s.iter().enumerate().filter(|(_, &s)| s == 2) {
        match fs_double_square_at(&census, i + 1) {
            Ok(d) => {
                if let Some(why) = round_trip_failure(w, &d) {
                    finding(Property::Factorization, Some(i + 1), why.into());
                }
                fs.push(d);
            }
            Err(e) => finding(Property::Factorization, Some(i + 1), e.to_string()),
        }
    }

    let mut two_fs = Vec::new();
    let mut mates = Vec::new();
    for pair in fs.windows(2).filter(|p| p[1].position == p[0].position + 1) {
        let position = pair[0].position;
        match classify_pair(&pair[0], &pair[1]) {
            Ok(c) => {
                let property = match c.kind {
                    TwoFsKind::Equal => Property::EqualChecks,
                    TwoFsKind::Unequal => Property::UnequalChecks,
                };
                for check in c.failed_checks() {
                    finding(property, Some(position), format!("{} failed", check.name));
                }
                two_fs.push(c);
            }
            Err(e) => finding(Property::Dichotomy, Some(position), e.to_string()),
        }
        match classify_mate(&pair[0], &pair[1]) {
            Ok(mate) => {
                if !matches!(mate.label, MateLabel::Alpha | MateLabel::Delta) {
                    finding(
                        Property::Mates,
                        Some(position),
                        format!("adjacent mate is {}", mate.label.name()),
                    );
                }
                mates.push(AdjacentMate { position, mate });
            }
            Err(e) => finding(Property::Mates, Some(position), e.to_string()),
        }
    }

    let t = census.longest_run.length;
    if n > 0 && 7 * t >= n {
        finding(Property::RunBound, None, format!("T = {t}, n = {n}"));
    }

    let chains = equal_chains(&fs);
    Analysis {
        census,
        fs_double_squares: fs,
        two_fs,
        mates,
        equal_chains: chains,
        findings,
    }
}

/// Rebuild `sq` and `SQ` from the factorization and compare with the word.
fn round_trip_failure(w: &[u8], d: &FsDoubleSquare) -> Option<&'static str> {
    let f = &d.factorization;
    let at = d.position - 1;
    if f.sq()[..] != w[at..at + d.sq_len] || f.big_root()[..] != w[at..at + d.big_len] {
        return Some("reconstruction differs from the word");
    }
    if !(f.p1 >= f.p2 && f.p2 >= 1) {
        return Some("exponents violate p1 >= p2 >= 1");
    }
    if f.x1.is_empty() || !is_primitive(&f.x1x2()).unwrap_or(false) {
        return Some("x1x2 is not primitive or x1 is empty");
    }
    let w_sq = &w[at..at + 2 * d.sq_len];
    let w_big = &w[at..at + 2 * d.big_len];
    if w_sq[..d.sq_len] != w_sq[d.sq_len..] || w_big[..d.big_len] != w_big[d.big_len..] {
        return Some("factors are not squares");
    }
    None
}
