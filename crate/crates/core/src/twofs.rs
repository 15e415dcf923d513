//! 2FS squares: FS-double squares at adjacent positions.
//!
//! A 2FS square is either *equal* (`|sq_1| = |sq_2|` and `|SQ_1| = |SQ_2|`)
//! or *unequal* (`|sq_1| < |SQ_1| < |sq_2| < |SQ_2|`). The remaining length
//! orderings (cases 1-11 below) never occur; meeting one is a hard error
//! because it would be a counterexample.
//!
//! The individual lemma checks are recorded as named booleans and never
//! short-circuit, so a failed check shows up as data.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fsds::{fs_double_squares_in, Factorization, FsDoubleSquare};
use crate::squares::s_sequence;
use crate::word::{are_conjugate, lcp, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TwoFsKind {
    Equal,
    Unequal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub pass: bool,
}

impl Check {
    fn new(name: &'static str, pass: bool) -> Self {
        Self { name, pass }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFsClassification {
    /// 1-based start of the first FS-double square.
    pub position: usize,
    pub kind: TwoFsKind,
    /// Row of the case tables: 12 (equal) or 13 (unequal).
    pub case: u8,
    pub first: FsDoubleSquare,
    pub second: FsDoubleSquare,
    pub checks: Vec<Check>,
}

impl TwoFsClassification {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

/// Case number (1-13) of the length ordering of a 2FS pair, following the
/// infeasible (1-11) and feasible (12-13) case tables. The thirteen cases
/// cover every ordering with `sq_1 < SQ_1` and `sq_2 < SQ_2`.
pub fn length_case(sq1: usize, big1: usize, sq2: usize, big2: usize) -> Option<u8> {
    let cases: [(u8, bool); 13] = [
        (1, sq1 < sq2 && sq2 < big1 && big1 == big2),
        (2, sq2 < sq1 && sq1 < big1 && big1 == big2),
        (3, sq1 == sq2 && sq2 < big1 && big1 < big2),
        (4, sq1 == sq2 && sq2 < big2 && big2 < big1),
        (5, sq2 < sq1 && sq1 == big2 && big2 < big1),
        (6, sq2 < sq1 && sq1 < big2 && big2 < big1),
        (7, sq2 < big2 && big2 < sq1 && sq1 < big1),
        (8, sq2 < sq1 && sq1 < big1 && big1 < big2),
        (9, sq1 < sq2 && sq2 < big2 && big2 < big1),
        (10, sq1 < big1 && big1 == sq2 && sq2 < big2),
        (11, sq1 < sq2 && sq2 < big1 && big1 < big2),
        (12, sq1 == sq2 && sq2 < big1 && big1 == big2),
        (13, sq1 < big1 && big1 < sq2 && sq2 < big2),
    ];
    cases.iter().find(|(_, hit)| *hit).map(|(c, _)| *c)
}

/// Classify two FS-double squares at adjacent positions and run the checks
/// for the resulting kind.
pub fn classify_pair(
    first: &FsDoubleSquare,
    second: &FsDoubleSquare,
) -> Result<TwoFsClassification> {
    let (sq1, big1, sq2, big2) = (first.sq_len, first.big_len, second.sq_len, second.big_len);
    let (kind, case) = match length_case(sq1, big1, sq2, big2) {
        Some(12) => (TwoFsKind::Equal, 12),
        Some(13) => (TwoFsKind::Unequal, 13),
        _ => {
            return Err(Error::Forbidden2Fs {
                position: first.position,
                sq1,
                big1,
                sq2,
                big2,
            })
        }
    };
    let mut c = TwoFsClassification {
        position: first.position,
        kind,
        case,
        first: first.clone(),
        second: second.clone(),
        checks: Vec::new(),
    };
    c.checks = match kind {
        TwoFsKind::Equal => check_equal_2fs(&c)?,
        TwoFsKind::Unequal => check_unequal_2fs(&c)?,
    };
    c.checks
        .push(Check::new("lemma7_ends_after", second.end() > first.end()));
    Ok(c)
}

/// All 2FS squares of a word.
pub fn find_2fs(w: &[u8]) -> Result<Vec<TwoFsClassification>> {
    let fs = fs_double_squares_in(&s_sequence(w))?;
    two_fs_in(&fs)
}

/// 2FS squares among already detected FS-double squares (sorted by position).
pub fn two_fs_in(fs: &[FsDoubleSquare]) -> Result<Vec<TwoFsClassification>> {
    fs.windows(2)
        .filter(|p| p[1].position == p[0].position + 1)
        .map(|p| classify_pair(&p[0], &p[1]))
        .collect()
}

fn squared(w: &Word) -> Word {
    w.pow(2)
}

/// `u a = a v` and `u u a = a v v`.
fn shift_relation(u: &Word, v: &Word, a: u8) -> bool {
    let ua = [&u[..], &[a]].concat();
    let av = [&[a][..], &v[..]].concat();
    let uua = [&squared(u)[..], &[a]].concat();
    let avv = [&[a][..], &squared(v)[..]].concat();
    ua == av && uua == avv
}

pub fn check_equal_2fs(c: &TwoFsClassification) -> Result<Vec<Check>> {
    if c.kind != TwoFsKind::Equal {
        return Err(Error::WrongTwoFsKind { expected: "equal" });
    }
    let (big1, big2) = (c.first.big_root(), c.second.big_root());
    let (sq1, sq2) = (c.first.sq(), c.second.sq());
    let a = big1[0];
    let f = &c.first.factorization;
    Ok(vec![
        Check::new(
            "big_squares_conjugate",
            are_conjugate(&squared(&big1), &squared(&big2)),
        ),
        Check::new(
            "small_squares_conjugate",
            are_conjugate(&squared(&sq1), &squared(&sq2)),
        ),
        Check::new(
            "lemma5_shift",
            shift_relation(&big1, &big2, a) && shift_relation(&sq1, &sq2, a),
        ),
        Check::new("lcp_x1_x2_nonempty", lcp(&f.x1, &f.x2) > 0),
    ])
}

pub fn check_unequal_2fs(c: &TwoFsClassification) -> Result<Vec<Check>> {
    if c.kind != TwoFsKind::Unequal {
        return Err(Error::WrongTwoFsKind {
            expected: "unequal",
        });
    }
    let x = &c.first.factorization;
    let y = &c.second.factorization;
    let (sq1, big1) = (c.first.sq_len, c.first.big_len);
    let (sq2, big2) = (c.second.sq_len, c.second.big_len);
    Ok(vec![
        Check::new(
            "lemma12a_sq2_lower_bound",
            sq2 >= big1 + sq1 + (x.p2 - 1) * x.period(),
        ),
        Check::new("lemma12b_period_grows", y.period() > x.period()),
        Check::new("lemma12c_big_root_doubles", big2 > 2 * big1),
        Check::new("lemma11_sq2_exceeds_sum", sq2 > big1 + sq1),
    ])
}

/// Upper bound on the number of consecutive equal-length FS-double squares
/// starting with `f`, counting the first one:
/// `|lcp| + 1` if `p1 > p2`, else `min(|lcp| + 1, |x1|)`.
pub fn chain_bound_counting_first(f: &Factorization) -> usize {
    let l = f.conjugate_lcp();
    if f.p1 > f.p2 {
        l + 1
    } else {
        (l + 1).min(f.x1.len())
    }
}

/// The companion bound `|lcp|` if `p1 > p2`, else `min(|lcp|, |x1| - 1)`,
/// which equals the number of squares added after the first.
pub fn chain_bound_added(f: &Factorization) -> usize {
    let l = f.conjugate_lcp();
    if f.p1 > f.p2 {
        l
    } else {
        l.min(f.x1.len() - 1)
    }
}

/// A maximal block of consecutive FS-double squares of equal lengths.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualChain {
    pub start: usize,
    /// Number of FS-double squares in the block (>= 2).
    pub count: usize,
    pub bound_counting_first: usize,
    pub bound_added: usize,
}

pub fn equal_chains(fs: &[FsDoubleSquare]) -> Vec<EqualChain> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < fs.len() {
        let mut j = i + 1;
        while j < fs.len()
            && fs[j].position == fs[j - 1].position + 1
            && fs[j].sq_len == fs[i].sq_len
            && fs[j].big_len == fs[i].big_len
        {
            j += 1;
        }
        if j - i >= 2 {
            let f = &fs[i].factorization;
            out.push(EqualChain {
                start: fs[i].position,
                count: j - i,
                bound_counting_first: chain_bound_counting_first(f),
                bound_added: chain_bound_added(f),
            });
        }
        i = j;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fsds::find_fs_double_squares;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn paper_w1() -> Word {
        let v = "abaaabaabaaabb";
        w(&format!("a{}", format!("{v}ab{v}").repeat(2)))
    }

    fn paper_w2() -> Word {
        let v = "abaaabaabaaabb";
        w(&format!("a{}", format!("{v}{v}ab{v}").repeat(2)))
    }

    #[test]
    fn equal_example() {
        let found = find_2fs(&w("abaababaabaababaa")).unwrap();
        assert_eq!(found.len(), 1);
        let c = &found[0];
        assert_eq!((c.position, c.kind, c.case), (1, TwoFsKind::Equal, 12));
        assert!(c.all_checks_pass(), "{:?}", c.checks);
        assert_eq!(c.checks.len(), 5);
        assert!(check_unequal_2fs(c).is_err());
    }

    #[test]
    fn unequal_examples() {
        for (word, big2) in [(paper_w1(), 30), (paper_w2(), 44)] {
            let found = find_2fs(&word).unwrap();
            assert_eq!(found.len(), 1);
            let c = &found[0];
            assert_eq!((c.position, c.kind, c.case), (1, TwoFsKind::Unequal, 13));
            assert_eq!((c.first.big_len, c.second.big_len), (7, big2));
            assert!(c.all_checks_pass(), "{:?}", c.checks);
            assert!(matches!(
                check_equal_2fs(c),
                Err(Error::WrongTwoFsKind { expected: "equal" })
            ));
        }
        assert!(find_2fs(&w("abaababaab")).unwrap().is_empty());
    }

    #[test]
    fn negative_control_non_conjugate() {
        let mut c = find_2fs(&w("abaababaabaababaa")).unwrap().remove(0);
        // Same lengths (5, 8), b-heavy content: not a rotation of the first.
        c.second.factorization = Factorization {
            x1: w("ba"),
            x2: w("b"),
            p1: 1,
            p2: 1,
        };
        assert_eq!(c.second.big_root(), w("babbabab"));
        let checks = check_equal_2fs(&c).unwrap();
        assert_eq!(checks[0].name, "big_squares_conjugate");
        assert!(!checks[0].pass);
        assert!(!checks[1].pass);
    }

    #[test]
    fn case_table() {
        assert_eq!(length_case(5, 8, 5, 8), Some(12));
        assert_eq!(length_case(4, 7, 16, 30), Some(13));
        assert_eq!(length_case(3, 8, 5, 8), Some(1));
        assert_eq!(length_case(5, 8, 3, 8), Some(2));
        assert_eq!(length_case(5, 8, 5, 9), Some(3));
        assert_eq!(length_case(5, 9, 5, 8), Some(4));
        assert_eq!(length_case(6, 9, 3, 6), Some(5));
        assert_eq!(length_case(6, 9, 3, 7), Some(6));
        assert_eq!(length_case(6, 9, 3, 5), Some(7));
        assert_eq!(length_case(6, 9, 3, 10), Some(8));
        assert_eq!(length_case(3, 9, 5, 8), Some(9));
        assert_eq!(length_case(3, 5, 5, 8), Some(10));
        assert_eq!(length_case(3, 6, 5, 8), Some(11));
    }

    #[test]
    fn every_ordering_has_a_case() {
        for sq1 in 1..6 {
            for big1 in sq1 + 1..7 {
                for sq2 in 1..6 {
                    for big2 in sq2 + 1..7 {
                        assert!(
                            length_case(sq1, big1, sq2, big2).is_some(),
                            "{sq1} {big1} {sq2} {big2}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn forbidden_shape_is_an_error() {
        let fs = find_fs_double_squares(&w("abaababaabaababaa")).unwrap();
        let mut second = fs[1].clone();
        second.big_len += 1;
        assert!(matches!(
            classify_pair(&fs[0], &second),
            Err(Error::Forbidden2Fs {
                sq1: 5,
                big1: 8,
                sq2: 5,
                big2: 9,
                ..
            })
        ));
    }

    #[test]
    fn chain_bounds_on_seventeen_letter_word() {
        let fs = find_fs_double_squares(&w("abaababaabaababaa")).unwrap();
        let chains = equal_chains(&fs);
        assert_eq!(
            chains,
            vec![EqualChain {
                start: 1,
                count: 2,
                bound_counting_first: 2,
                bound_added: 1,
            }]
        );
    }
}
