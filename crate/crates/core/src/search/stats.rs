//! Per-length aggregates. Merging is associative and commutative: counts
//! add up and every extremum keeps the lexicographically smallest witness.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::analysis::{Analysis, Finding};
use crate::word::Word;

/// Findings kept verbatim per report; the total is always exact.
pub const FINDINGS_CAP: usize = 1000;

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthStats {
    pub n: usize,
    pub words: u64,
    pub max_distinct_squares: usize,
    pub max_distinct_witness: Option<Word>,
    pub max_s: u32,
    /// Longest run of 2's over all words of this length.
    pub max_t: usize,
    pub max_t_witness: Option<Word>,
    /// Number of words by longest run length.
    pub t_histogram: BTreeMap<usize, u64>,
    /// Positions with `s_i = 2`.
    pub fs_positions: u64,
    /// Of those, positions whose factorization rebuilt the word exactly.
    pub factorizations_verified: u64,
    pub two_fs_equal: u64,
    pub two_fs_unequal: u64,
    /// Adjacent mate labels.
    pub mates: BTreeMap<String, u64>,
    pub equal_chains: u64,
    pub longest_equal_chain: usize,
    /// Chains longer than `min(|lcp| + 1, |x1|)` (resp. `|lcp| + 1`).
    pub chains_over_bound_counting_first: u64,
    /// Chains longer than `min(|lcp|, |x1| - 1)` (resp. `|lcp|`).
    pub chains_over_bound_added: u64,
    /// Chains whose length meets the counting-first bound exactly.
    pub chains_tight: u64,
}

fn better_witness(a: &Option<Word>, b: &Option<Word>) -> Option<Word> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y).clone()),
        (x, y) => x.clone().or_else(|| y.clone()),
    }
}

impl LengthStats {
    pub fn new(n: usize) -> Self {
        Self {
            n,
            ..Self::default()
        }
    }

    pub fn record(&mut self, a: &Analysis) {
        let c = &a.census;
        let word = &c.word;
        self.words += 1;
        let ds = c.distinct_square_count;
        if ds > self.max_distinct_squares || self.max_distinct_witness.is_none() {
            self.max_distinct_squares = ds;
            self.max_distinct_witness = Some(word.clone());
        } else if ds == self.max_distinct_squares {
            self.max_distinct_witness =
                better_witness(&self.max_distinct_witness, &Some(word.clone()));
        }
        self.max_s = self.max_s.max(c.max_s());
        let t = c.longest_run.length;
        if t > self.max_t || self.max_t_witness.is_none() {
            self.max_t = t;
            self.max_t_witness = Some(word.clone());
        } else if t == self.max_t {
            self.max_t_witness = better_witness(&self.max_t_witness, &Some(word.clone()));
        }
        *self.t_histogram.entry(t).or_default() += 1;
        self.fs_positions += c.s.iter().filter(|&&s| s == 2).count() as u64;
        self.factorizations_verified += a
            .fs_double_squares
            .iter()
            .filter(|d| {
                let at = d.position - 1;
                d.sq()[..] == word[at..at + d.sq_len]
                    && d.big_root()[..] == word[at..at + d.big_len]
            })
            .count() as u64;
        for p in &a.two_fs {
            match p.kind {
                crate::twofs::TwoFsKind::Equal => self.two_fs_equal += 1,
                crate::twofs::TwoFsKind::Unequal => self.two_fs_unequal += 1,
            }
        }
        for m in &a.mates {
            *self
                .mates
                .entry(m.mate.label.name().to_string())
                .or_default() += 1;
        }
        for ch in &a.equal_chains {
            self.equal_chains += 1;
            self.longest_equal_chain = self.longest_equal_chain.max(ch.count);
            self.chains_over_bound_counting_first += (ch.count > ch.bound_counting_first) as u64;
            self.chains_over_bound_added += (ch.count > ch.bound_added) as u64;
            self.chains_tight += (ch.count == ch.bound_counting_first) as u64;
        }
    }

    pub fn merge(&mut self, o: &LengthStats) {
        debug_assert_eq!(self.n, o.n);
        if o.words == 0 {
            return;
        }
        if self.words == 0 {
            *self = o.clone();
            return;
        }
        self.words += o.words;
        match o.max_distinct_squares.cmp(&self.max_distinct_squares) {
            std::cmp::Ordering::Greater => {
                self.max_distinct_squares = o.max_distinct_squares;
                self.max_distinct_witness = o.max_distinct_witness.clone();
            }
            std::cmp::Ordering::Equal => {
                self.max_distinct_witness =
                    better_witness(&self.max_distinct_witness, &o.max_distinct_witness);
            }
            std::cmp::Ordering::Less => {}
        }
        self.max_s = self.max_s.max(o.max_s);
        match o.max_t.cmp(&self.max_t) {
            std::cmp::Ordering::Greater => {
                self.max_t = o.max_t;
                self.max_t_witness = o.max_t_witness.clone();
            }
            std::cmp::Ordering::Equal => {
                self.max_t_witness = better_witness(&self.max_t_witness, &o.max_t_witness);
            }
            std::cmp::Ordering::Less => {}
        }
        for (t, c) in &o.t_histogram {
            *self.t_histogram.entry(*t).or_default() += c;
        }
        self.fs_positions += o.fs_positions;
        self.factorizations_verified += o.factorizations_verified;
        self.two_fs_equal += o.two_fs_equal;
        self.two_fs_unequal += o.two_fs_unequal;
        for (l, c) in &o.mates {
            *self.mates.entry(l.clone()).or_default() += c;
        }
        self.equal_chains += o.equal_chains;
        self.longest_equal_chain = self.longest_equal_chain.max(o.longest_equal_chain);
        self.chains_over_bound_counting_first += o.chains_over_bound_counting_first;
        self.chains_over_bound_added += o.chains_over_bound_added;
        self.chains_tight += o.chains_tight;
    }
}

/// Aggregates of one block of words (all of one length).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockResult {
    pub stats: LengthStats,
    pub findings_total: u64,
    pub findings: Vec<Finding>,
}

impl BlockResult {
    pub fn new(n: usize) -> Self {
        Self {
            stats: LengthStats::new(n),
            findings_total: 0,
            findings: Vec::new(),
        }
    }

    pub fn push_findings(&mut self, found: impl IntoIterator<Item = Finding>) {
        for f in found {
            self.findings_total += 1;
            self.findings.push(f);
        }
        cap_findings(&mut self.findings);
    }
}

/// Sort and keep the first [`FINDINGS_CAP`] findings.
pub fn cap_findings(findings: &mut Vec<Finding>) {
    if findings.len() > FINDINGS_CAP {
        findings.sort();
        findings.truncate(FINDINGS_CAP);
    }
}
