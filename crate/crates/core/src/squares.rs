//! Square occurrences, rightmost distinct squares and the `s_i` census.
//!
//! A square `uu` occurring at position `i` is the rightmost occurrence of its
//! value iff it does not occur again at any `j > i`, i.e. iff `2|u|` exceeds
//! the longest extension the suffix at `i` shares with any later suffix.
//! That turns distinctness into exact LCE comparisons: no hashing, no string
//! sets.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use crate::lce::LceTable;
use crate::word::{letter, Word};

/// One occurrence of a square: `w[start .. start + 2 root_len)` with both
/// halves equal. `start` is 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SquareOccurrence {
    pub start: usize,
    pub root_len: usize,
}

impl SquareOccurrence {
    /// 1-based position of the last letter of the square.
    pub fn end(&self) -> usize {
        self.start + 2 * self.root_len - 1
    }

    pub fn value<'a>(&self, w: &'a [u8]) -> &'a [u8] {
        &w[self.start - 1..self.end()]
    }
}

/// A maximal block of consecutive positions with `s_i = 2` (1-based start).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct RunOfTwos {
    pub start: usize,
    pub length: usize,
}

/// The `s_i` sequence of a word and the statistics derived from it.
#[derive(Debug, Clone, Serialize)]
pub struct CensusReport {
    pub word: Word,
    /// `s[i - 1]` is `s_i`.
    pub s: Vec<u32>,
    pub distinct_square_count: usize,
    pub runs_of_two: Vec<RunOfTwos>,
    pub longest_run: RunOfTwos,
    /// Rightmost occurrences, one per distinct square value, sorted by
    /// `(start, root_len)`.
    #[serde(skip)]
    pub rightmost: Vec<SquareOccurrence>,
}

impl CensusReport {
    pub fn n(&self) -> usize {
        self.s.len()
    }

    /// Largest `s_i`; anything above two is a finding.
    pub fn max_s(&self) -> u32 {
        self.s.iter().copied().max().unwrap_or(0)
    }

    /// Root lengths of the rightmost squares starting at 1-based `position`,
    /// in increasing order.
    pub fn rightmost_roots_at(&self, position: usize) -> Vec<usize> {
        let from = self.rightmost.partition_point(|o| o.start < position);
        self.rightmost[from..]
            .iter()
            .take_while(|o| o.start == position)
            .map(|o| o.root_len)
            .collect()
    }

    /// Length of the run of 2's covering `position`, if `s_position = 2`.
    pub fn run_containing(&self, position: usize) -> Option<RunOfTwos> {
        self.runs_of_two
            .iter()
            .copied()
            .find(|r| r.start <= position && position < r.start + r.length)
    }
}

/// Every square occurrence, including non-primitively rooted ones, sorted
/// by `(start, root_len)`.
pub fn enumerate_squares(w: &[u8]) -> Vec<SquareOccurrence> {
    let lce = LceTable::new(w);
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        for p in 1..=(n - i) / 2 {
            if lce.lce(i, i + p) >= p {
                out.push(SquareOccurrence {
                    start: i + 1,
                    root_len: p,
                });
            }
        }
    }
    out
}

fn rightmost_occurrences(w: &[u8]) -> Vec<SquareOccurrence> {
    let n = w.len();
    if n == 0 {
        return Vec::new();
    }
    let lce = LceTable::new(w);
    let later = lce.longest_later_match();
    let mut out = Vec::new();
    for (i, &again) in later.iter().enumerate() {
        // Squares of length <= `again` reappear to the right.
        let min_root = again / 2 + 1;
        for p in min_root..=(n - i) / 2 {
            if lce.lce(i, i + p) >= p {
                out.push(SquareOccurrence {
                    start: i + 1,
                    root_len: p,
                });
            }
        }
    }
    out
}

/// Map from each distinct square value to the 1-based start of its last
/// occurrence.
pub fn rightmost_map(w: &[u8]) -> BTreeMap<Word, usize> {
    rightmost_occurrences(w)
        .into_iter()
        .map(|o| (Word::from(o.value(w)), o.start))
        .collect()
}

/// Census of a word: `s_i`, `|DS(w)|` and the runs of 2's.
pub fn s_sequence(w: &[u8]) -> CensusReport {
    let rightmost = rightmost_occurrences(w);
    let mut s = vec![0u32; w.len()];
    for o in &rightmost {
        s[o.start - 1] += 1;
    }
    let runs_of_two = runs_of_two(&s);
    let longest_run = longest_of(&runs_of_two);
    CensusReport {
        word: Word::from(w),
        s,
        distinct_square_count: rightmost.len(),
        runs_of_two,
        longest_run,
        rightmost,
    }
}

fn runs_of_two(s: &[u32]) -> Vec<RunOfTwos> {
    let mut runs = Vec::new();
    let mut i = 0;
    while i < s.len() {
        if s[i] == 2 {
            let j = i + s[i..].iter().take_while(|&&v| v == 2).count();
            runs.push(RunOfTwos {
                start: i + 1,
                length: j - i,
            });
            i = j;
        } else {
            i += 1;
        }
    }
    runs
}

/// Leftmost run of maximal length; `(0, 0)` when there is none.
fn longest_of(runs: &[RunOfTwos]) -> RunOfTwos {
    runs.iter().fold(RunOfTwos::default(), |best, r| {
        if r.length > best.length {
            *r
        } else {
            best
        }
    })
}

/// Leftmost maximal-length run of consecutive `s_i = 2` in a report.
pub fn longest_run_of_twos(report: &CensusReport) -> RunOfTwos {
    longest_of(&runs_of_two(&report.s))
}

/// TSV rendering: header `index\tletter\ts_i`, one row per position.
pub fn render_tsv(report: &CensusReport) -> String {
    let mut out = String::from("index\tletter\ts_i\n");
    for (i, (&c, &s)) in report.word.iter().zip(&report.s).enumerate() {
        let ch = letter(c).map_or_else(|_| format!("<{c}>"), String::from);
        let _ = writeln!(out, "{}\t{}\t{}", i + 1, ch, s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashMap;

    fn w(s: &str) -> Word {
        s.parse().unwrap()
    }

    fn occ(start: usize, root_len: usize) -> SquareOccurrence {
        SquareOccurrence { start, root_len }
    }

    fn cubic_squares(w: &[u8]) -> Vec<SquareOccurrence> {
        let mut out = Vec::new();
        for i in 0..w.len() {
            for p in 1..=(w.len() - i) / 2 {
                if (0..p).all(|k| w[i + k] == w[i + p + k]) {
                    out.push(occ(i + 1, p));
                }
            }
        }
        out
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_squares(&w("aaaa")),
            vec![occ(1, 1), occ(1, 2), occ(2, 1), occ(3, 1)]
        );
        assert!(enumerate_squares(&w("abcab")).is_empty());
        let x = w("abaababaab");
        let got = enumerate_squares(&x);
        assert_eq!(got, cubic_squares(&x));
        assert_eq!(got.len(), 6);
        assert!(got.contains(&occ(1, 3)) && got.contains(&occ(1, 5)));
    }

    #[test]
    fn rightmost_map_examples() {
        let m = rightmost_map(&w("aaaa"));
        assert_eq!(m.len(), 2);
        assert_eq!(m[&w("aa")], 3);
        assert_eq!(m[&w("aaaa")], 1);

        let m = rightmost_map(&w("abab"));
        assert_eq!(m[&w("abab")], 1);

        let x = w("abaababaab");
        let mut oracle: HashMap<Word, usize> = HashMap::new();
        for o in cubic_squares(&x) {
            let e = oracle.entry(Word::from(o.value(&x))).or_insert(0);
            *e = (*e).max(o.start);
        }
        let m = rightmost_map(&x);
        assert_eq!(m.len(), oracle.len());
        for (k, v) in &oracle {
            assert_eq!(m[k], *v, "{k}");
        }
        assert_eq!(m[&w("abaaba")], 1);
        assert_eq!(m[&w("abaababaab")], 1);
        assert_eq!(m[&w("baba")], 5);
        assert_eq!(m[&w("abab")], 4);
    }

    #[test]
    fn census_of_seventeen_letter_word() {
        let r = s_sequence(&w("abaababaabaababaa"));
        assert_eq!(r.s, vec![2, 2, 0, 0, 0, 0, 1, 1, 1, 0, 0, 1, 1, 0, 0, 1, 0]);
        assert_eq!(r.distinct_square_count, 10);
        assert_eq!(
            r.longest_run,
            RunOfTwos {
                start: 1,
                length: 2
            }
        );
        assert_eq!(longest_run_of_twos(&r), r.longest_run);
        assert_eq!(r.rightmost_roots_at(1), vec![5, 8]);
        assert_eq!(r.rightmost_roots_at(3), Vec::<usize>::new());
    }

    #[test]
    fn census_small_cases() {
        let r = s_sequence(&w("ab"));
        assert_eq!(r.s, vec![0, 0]);
        assert_eq!(r.longest_run, RunOfTwos::default());
        assert!(r.runs_of_two.is_empty());

        let r = s_sequence(&w("abaababaab"));
        assert_eq!(r.s[0], 2);
        assert_eq!(
            r.longest_run,
            RunOfTwos {
                start: 1,
                length: 1
            }
        );

        let r = s_sequence(&[]);
        assert_eq!(r.n(), 0);
        assert_eq!(r.max_s(), 0);
    }

    #[test]
    fn leftmost_longest_run_wins_ties() {
        let mut r = s_sequence(&w("ab"));
        r.s = vec![2, 0, 2, 2, 0, 2, 2];
        assert_eq!(
            longest_run_of_twos(&r),
            RunOfTwos {
                start: 3,
                length: 2
            }
        );
    }

    #[test]
    fn tsv_layout() {
        let r = s_sequence(&w("aab"));
        assert_eq!(
            render_tsv(&r),
            "index\tletter\ts_i\n1\ta\t1\n2\ta\t0\n3\tb\t0\n"
        );
    }
}
