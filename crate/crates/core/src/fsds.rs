//! FS-double squares: positions where two rightmost distinct squares start.
//!
//! Every FS-double square `(sq², SQ²)` factors as
//! `sq = (x1 x2)^p1 x1`, `SQ = (x1 x2)^p1 x1 (x1 x2)^p2` with `x1 x2`
//! primitive and `p1 >= p2 >= 1`. The factorization is recovered from the
//! suffix of `SQ` of length `|SQ| - |sq|`, which is `(x1 x2)^p2`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::squares::{s_sequence, CensusReport};
use crate::word::{is_primitive, lcp, primitive_root_len, Word};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    pub x1: Word,
    pub x2: Word,
    pub p1: usize,
    pub p2: usize,
}

impl Factorization {
    /// `|x1 x2|`.
    pub fn period(&self) -> usize {
        self.x1.len() + self.x2.len()
    }

    pub fn x1x2(&self) -> Word {
        Word::concat(&[&self.x1, &self.x2])
    }

    pub fn x2x1(&self) -> Word {
        Word::concat(&[&self.x2, &self.x1])
    }

    /// `(x1 x2)^p1 x1`.
    pub fn sq(&self) -> Word {
        let mut w = self.x1x2().pow(self.p1);
        w.extend_from_slice(&self.x1);
        w
    }

    /// `(x1 x2)^p1 x1 (x1 x2)^p2`.
    pub fn big_root(&self) -> Word {
        let mut w = self.sq();
        w.extend_from_slice(&self.x1x2().pow(self.p2));
        w
    }

    /// `|lcp(x1 x2, x2 x1)|`.
    pub fn conjugate_lcp(&self) -> usize {
        lcp(&self.x1x2(), &self.x2x1())
    }

    /// Start offset from which a later FS-double square is an ε mate:
    /// `(p1 - 1)|x1 x2| + |lcp(x1 x2, x2 x1)|`.
    pub fn epsilon_threshold(&self) -> usize {
        (self.p1 - 1) * self.period() + self.conjugate_lcp()
    }
}

/// Recover `(x1, x2, p1, p2)` from the two roots of a balanced double
/// square, `sq` being a proper prefix of `big`.
pub fn canonical_factorization(sq: &[u8], big: &[u8]) -> Result<Factorization> {
    let shape = |reason| Error::NotFsShape {
        sq_len: sq.len(),
        big_len: big.len(),
        reason,
    };
    if sq.is_empty() || !big.starts_with(sq) || sq.len() >= big.len() {
        return Err(shape("sq is not a proper prefix of SQ"));
    }
    if big.len() >= 2 * sq.len() {
        return Err(shape("not balanced: |SQ| >= 2|sq|"));
    }
    let tail = &big[sq.len()..];
    let period = primitive_root_len(tail)?;
    let x1_len = sq.len() % period;
    if x1_len == 0 {
        return Err(Error::NoFactorization {
            sq_len: sq.len(),
            period,
        });
    }
    let root = &tail[..period];
    let f = Factorization {
        x1: Word::from(&root[..x1_len]),
        x2: Word::from(&root[x1_len..]),
        p1: sq.len() / period,
        p2: tail.len() / period,
    };
    if *f.sq() != *sq || *f.big_root() != *big {
        return Err(shape("reconstruction mismatch"));
    }
    if f.p1 < f.p2 {
        return Err(shape("p1 < p2"));
    }
    Ok(f)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FsDoubleSquare {
    /// 1-based start.
    pub position: usize,
    pub sq_len: usize,
    #[serde(rename = "SQ_len")]
    pub big_len: usize,
    #[serde(flatten)]
    pub factorization: Factorization,
}

impl FsDoubleSquare {
    pub fn sq(&self) -> Word {
        self.factorization.sq()
    }

    pub fn big_root(&self) -> Word {
        self.factorization.big_root()
    }

    /// 1-based position of the last letter of `SQ²`.
    pub fn end(&self) -> usize {
        self.position + 2 * self.big_len - 1
    }
}

/// FS-double squares of a word, one per position with `s_i = 2`.
pub fn find_fs_double_squares(w: &[u8]) -> Result<Vec<FsDoubleSquare>> {
    fs_double_squares_in(&s_sequence(w))
}

/// Same as [`find_fs_double_squares`] on an existing census.
pub fn fs_double_squares_in(report: &CensusReport) -> Result<Vec<FsDoubleSquare>> {
    let mut out = Vec::new();
    for (idx, &s) in report.s.iter().enumerate() {
        if s >= 2 {
            out.push(fs_double_square_at(report, idx + 1)?);
        }
    }
    Ok(out)
}

/// The FS-double square at a 1-based position with `s_i = 2`.
pub fn fs_double_square_at(report: &CensusReport, position: usize) -> Result<FsDoubleSquare> {
    let w = &report.word;
    let idx = position - 1;
    let roots = report.rightmost_roots_at(position);
    if roots.len() != 2 {
        return Err(Error::TooManyRightmost {
            position,
            count: roots.len(),
        });
    }
    let (sq_len, big_len) = (roots[0], roots[1]);
    let sq = &w[idx..idx + sq_len];
    let big = &w[idx..idx + big_len];
    let factorization = canonical_factorization(sq, big)?;
    let invalid = |reason| Error::InvalidFsDoubleSquare { position, reason };
    if !is_primitive(big)? {
        return Err(invalid("SQ is not primitive"));
    }
    if factorization.p1 > 1 && !is_primitive(sq)? {
        return Err(invalid("sq is not primitive although p1 > 1"));
    }
    if !is_primitive(&factorization.x1x2())? {
        return Err(invalid("x1x2 is not primitive"));
    }
    Ok(FsDoubleSquare {
        position,
        sq_len,
        big_len,
        factorization,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MateLabel {
    Alpha,
    Beta,
    Gamma,
    Delta,
    Epsilon,
}

impl MateLabel {
    pub fn name(self) -> &'static str {
        match self {
            MateLabel::Alpha => "alpha",
            MateLabel::Beta => "beta",
            MateLabel::Gamma => "gamma",
            MateLabel::Delta => "delta",
            MateLabel::Epsilon => "epsilon",
        }
    }
}

/// Which prefix condition of the δ-mate definition matched.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaCondition {
    /// `s x2 x1 (x1 x2)^(p1+p2-1) x1` prefixes `sq_k`, `s` a suffix of `x1`.
    SuffixOfX1,
    /// `s (x1 x2)^i x1 (x1 x2)^(p1+p2-1) x1` is a proper nonempty prefix of
    /// `sq_k`, `s` a suffix of `x1 x2`, `i >= 1`.
    NonTrivialPrefix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MateClassification {
    pub label: MateLabel,
    /// Position of the second square with the first one at 1.
    pub k: usize,
    pub epsilon_threshold: usize,
    /// `k` reaches the ε threshold although the pair was classified by the
    /// length rules (adjacent pairs only).
    pub beyond_threshold: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_condition: Option<DeltaCondition>,
}

fn delta_prefix_condition(f: &Factorization, sq_k: &[u8]) -> Option<DeltaCondition> {
    let x1x2 = f.x1x2();
    let mut tail = f.x1.to_vec();
    tail.extend_from_slice(&x1x2.pow(f.p1 + f.p2 - 1));
    tail.extend_from_slice(&f.x1);

    let x2x1 = f.x2x1();
    for s_len in 0..=f.x1.len() {
        let s = &f.x1[f.x1.len() - s_len..];
        let candidate = [s, &x2x1, &x1x2.pow(f.p1 + f.p2 - 1), &f.x1].concat();
        if sq_k.starts_with(&candidate) {
            return Some(DeltaCondition::SuffixOfX1);
        }
    }
    for s_len in 0..=x1x2.len() {
        let s = &x1x2[x1x2.len() - s_len..];
        let mut i = 1;
        loop {
            let candidate = [s, &x1x2.pow(i), &tail].concat();
            if candidate.len() >= sq_k.len() {
                break;
            }
            if sq_k.starts_with(&candidate) {
                return Some(DeltaCondition::NonTrivialPrefix);
            }
            i += 1;
        }
    }
    None
}

/// Classify a later FS-double square relative to an earlier one.
///
/// Adjacent pairs always go through the α/β/γ/δ length rules; for pairs
/// further apart, reaching the ε threshold decides ε first.
pub fn classify_mate(
    first: &FsDoubleSquare,
    second: &FsDoubleSquare,
) -> Result<MateClassification> {
    if second.position <= first.position {
        return Err(Error::MateOrder {
            first: first.position,
            second: second.position,
        });
    }
    let f = &first.factorization;
    let k = second.position - first.position + 1;
    let threshold = f.epsilon_threshold();
    let mut out = MateClassification {
        label: MateLabel::Epsilon,
        k,
        epsilon_threshold: threshold,
        beyond_threshold: k >= threshold,
        delta_condition: None,
    };
    if k > 2 && k >= threshold {
        out.beyond_threshold = false;
        return Ok(out);
    }
    let (sq1, big1, sqk, bigk) = (first.sq_len, first.big_len, second.sq_len, second.big_len);
    out.label = if big1 == bigk && sq1 == sqk {
        MateLabel::Alpha
    } else if sq1 < sqk && big1 == bigk {
        MateLabel::Beta
    } else if k < f.p1 * f.period() && sqk == big1 {
        MateLabel::Gamma
    } else if sqk > big1 {
        match delta_prefix_condition(f, &second.sq()) {
            Some(c) => {
                out.delta_condition = Some(c);
                MateLabel::Delta
            }
            None => {
                return Err(Error::UnclassifiablePair {
                    first: first.position,
                    second: second.position,
                })
            }
        }
    } else {
        return Err(Error::UnclassifiablePair {
            first: first.position,
            second: second.position,
        });
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn fact(x1: &str, x2: &str, p1: usize, p2: usize) -> Factorization {
        Factorization {
            x1: w(x1),
            x2: w(x2),
            p1,
            p2,
        }
    }

    fn w1() -> Word {
        let v = "abaaabaabaaabb";
        w(&format!("a{}", format!("{v}ab{v}").repeat(2)))
    }

    #[test]
    fn factorization_examples() {
        assert_eq!(
            canonical_factorization(&w("aba"), &w("abaab")).unwrap(),
            fact("a", "b", 1, 1)
        );
        assert_eq!(
            canonical_factorization(&w("aaba"), &w("aabaaab")).unwrap(),
            fact("a", "ab", 1, 1)
        );
        let f = canonical_factorization(&w("aabaaba"), &w("aabaabaaab")).unwrap();
        assert_eq!(f, fact("a", "ab", 2, 1));
        assert_eq!(f.sq(), w("aabaaba"));
    }

    #[test]
    fn factorization_errors() {
        // |sq| a multiple of the tail period.
        assert!(matches!(
            canonical_factorization(&w("abab"), &w("ababab")),
            Err(Error::NoFactorization { .. })
        ));
        assert!(matches!(
            canonical_factorization(&w("ab"), &w("ba")),
            Err(Error::NotFsShape { .. })
        ));
        assert!(matches!(
            canonical_factorization(&w("ab"), &w("abba")),
            Err(Error::NotFsShape { .. })
        ));
        // Tail "ab" fits, but sq = "aab" is not (ab)^1 a.
        assert!(matches!(
            canonical_factorization(&w("aab"), &w("aabab")),
            Err(Error::NotFsShape {
                reason: "reconstruction mismatch",
                ..
            })
        ));
    }

    #[test]
    fn detect_smallest_fs_double_square() {
        let got = find_fs_double_squares(&w("abaababaab")).unwrap();
        assert_eq!(
            got,
            vec![FsDoubleSquare {
                position: 1,
                sq_len: 3,
                big_len: 5,
                factorization: fact("a", "b", 1, 1),
            }]
        );
        let got = find_fs_double_squares(&w("aabaaabaabaaab")).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!((got[0].sq_len, got[0].big_len), (4, 7));
        assert_eq!(got[0].factorization, fact("a", "ab", 1, 1));
        assert!(find_fs_double_squares(&w("ab")).unwrap().is_empty());
    }

    #[test]
    fn json_shape() {
        let got = find_fs_double_squares(&w("abaababaab")).unwrap();
        assert_eq!(
            serde_json::to_string(&got[0]).unwrap(),
            r#"{"position":1,"sq_len":3,"SQ_len":5,"x1":"a","x2":"b","p1":1,"p2":1}"#
        );
    }

    #[test]
    fn seventeen_letter_word_is_alpha() {
        let fs = find_fs_double_squares(&w("abaababaabaababaa")).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(fs[0].factorization, fact("ab", "a", 1, 1));
        let m = classify_mate(&fs[0], &fs[1]).unwrap();
        assert_eq!(m.label, MateLabel::Alpha);
        assert_eq!(m.k, 2);
        assert_eq!(m.epsilon_threshold, 1);
        assert!(m.beyond_threshold);
    }

    #[test]
    fn w1_pair_is_delta() {
        let fs = find_fs_double_squares(&w1()).unwrap();
        assert_eq!((fs[1].sq_len, fs[1].big_len), (16, 30));
        let m = classify_mate(&fs[0], &fs[1]).unwrap();
        assert_eq!(m.label, MateLabel::Delta);
        assert_eq!(m.delta_condition, Some(DeltaCondition::SuffixOfX1));
    }

    #[test]
    fn far_pairs_past_threshold_are_epsilon() {
        let first = FsDoubleSquare {
            position: 1,
            sq_len: 3,
            big_len: 5,
            factorization: fact("a", "b", 1, 1),
        };
        let mut second = first.clone();
        second.position = 4;
        let m = classify_mate(&first, &second).unwrap();
        assert_eq!(m.label, MateLabel::Epsilon);
        assert!(matches!(
            classify_mate(&second, &first),
            Err(Error::MateOrder { .. })
        ));
    }

    #[test]
    fn length_rules_below_threshold() {
        // p1 = 3 pushes the threshold to 2|x1x2| + lcp.
        let first = FsDoubleSquare {
            position: 1,
            sq_len: 7,
            big_len: 9,
            factorization: fact("a", "b", 3, 1),
        };
        let beta = FsDoubleSquare {
            position: 3,
            sq_len: 8,
            big_len: 9,
            factorization: fact("a", "b", 3, 1),
        };
        assert_eq!(classify_mate(&first, &beta).unwrap().label, MateLabel::Beta);
        let gamma = FsDoubleSquare {
            position: 3,
            sq_len: 9,
            big_len: 12,
            factorization: fact("a", "b", 3, 1),
        };
        assert_eq!(
            classify_mate(&first, &gamma).unwrap().label,
            MateLabel::Gamma
        );
        let shorter = FsDoubleSquare {
            position: 3,
            sq_len: 2,
            big_len: 3,
            factorization: fact("a", "b", 1, 1),
        };
        assert!(matches!(
            classify_mate(&first, &shorter),
            Err(Error::UnclassifiablePair { .. })
        ));
    }
}
