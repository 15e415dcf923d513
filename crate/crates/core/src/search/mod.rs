//! Exhaustive sweeps over all canonical words up to a length cap.
//!
//! Words of each length are split into blocks sharing a fixed prefix (about
//! 4096 words per block). Blocks are processed in parallel, each producing
//! an immutable [`BlockResult`]; the report merges them in block order, so
//! it does not depend on the worker count or on where a run was resumed.

pub mod canonical;
pub mod checkpoint;
pub mod stats;

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;
use std::sync::Mutex;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::analysis::{analyze, Finding, Property};
use crate::error::{Error, Result};
use crate::squares::s_sequence;
use crate::word::{Word, TEXT_ALPHABET};

use canonical::{canonical_words, for_each_canonical};
use checkpoint::BlockId;
pub use stats::{BlockResult, LengthStats, FINDINGS_CAP};

/// Default ceiling on `alphabet_size ^ max_len` (admits binary 18 and
/// ternary 12).
pub const DEFAULT_COST_CEILING: u64 = 531_441;
pub const COST_CEILING_ENV: &str = "FSDSQ_COST_CEILING";
const BLOCK_WORDS: u64 = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CostLimit {
    pub ceiling: u64,
    /// Run even when the cost is above the ceiling.
    pub allow_expensive: bool,
}

impl Default for CostLimit {
    fn default() -> Self {
        Self {
            ceiling: DEFAULT_COST_CEILING,
            allow_expensive: false,
        }
    }
}

impl CostLimit {
    /// Default limit with the ceiling taken from `FSDSQ_COST_CEILING` when set.
    pub fn from_env() -> Result<Self> {
        let mut limit = Self::default();
        if let Ok(v) = std::env::var(COST_CEILING_ENV) {
            limit.ceiling = v.trim().parse().map_err(|_| {
                Error::InvalidConfig(format!("{COST_CEILING_ENV}={v:?} is not a number"))
            })?;
        }
        Ok(limit)
    }

    pub fn cost(alphabet_size: usize, max_len: usize) -> u64 {
        (alphabet_size as u64).saturating_pow(max_len.min(u32::MAX as usize) as u32)
    }

    pub fn check(&self, alphabet_size: usize, max_len: usize) -> Result<()> {
        let cost = Self::cost(alphabet_size, max_len);
        if cost > self.ceiling && !self.allow_expensive {
            return Err(Error::CostCeiling {
                cost,
                ceiling: self.ceiling,
            });
        }
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub alphabet_size: usize,
    pub max_len: usize,
    pub properties: BTreeSet<Property>,
    pub checkpoint_path: Option<PathBuf>,
    /// Worker threads.
    pub jobs: usize,
    pub limit: CostLimit,
    /// Fill in `elapsed_ms`; leave off for byte-identical reports.
    pub record_timing: bool,
    /// Process at most this many pending blocks, then stop with
    /// [`Error::Interrupted`]. Used to exercise resumption.
    pub stop_after_blocks: Option<usize>,
}

impl SweepConfig {
    pub fn new(alphabet_size: usize, max_len: usize) -> Self {
        Self {
            alphabet_size,
            max_len,
            properties: Property::ALL.into_iter().collect(),
            checkpoint_path: None,
            jobs: 1,
            limit: CostLimit::default(),
            record_timing: false,
            stop_after_blocks: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.into()));
        if self.alphabet_size == 0 || self.alphabet_size > TEXT_ALPHABET {
            return bad("alphabet size must be between 1 and 26");
        }
        if self.max_len == 0 {
            return bad("max length must be at least 1");
        }
        if self.jobs == 0 {
            return bad("at least one worker is needed");
        }
        if self.properties.is_empty() {
            return bad("no properties selected");
        }
        self.limit.check(self.alphabet_size, self.max_len)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub alphabet_size: usize,
    pub max_len: usize,
    pub properties: Vec<Property>,
    pub words: u64,
    pub lengths: Vec<LengthStats>,
    /// Smallest length at which each longest-run value occurs.
    pub min_n_per_t: BTreeMap<usize, usize>,
    pub findings_total: u64,
    /// The first [`FINDINGS_CAP`] findings in sorted order.
    pub findings: Vec<Finding>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

impl SweepReport {
    pub fn max_t(&self) -> usize {
        self.lengths.iter().map(|l| l.max_t).max().unwrap_or(0)
    }

    pub fn max_s(&self) -> u32 {
        self.lengths.iter().map(|l| l.max_s).max().unwrap_or(0)
    }

    pub fn two_fs_count(&self) -> u64 {
        self.lengths
            .iter()
            .map(|l| l.two_fs_equal + l.two_fs_unequal)
            .sum()
    }

    pub fn length(&self, n: usize) -> Option<&LengthStats> {
        self.lengths.iter().find(|l| l.n == n)
    }
}

/// Letters left free inside a block.
fn block_suffix_len(k: usize) -> usize {
    if k <= 1 {
        return usize::MAX;
    }
    let mut s = 0;
    while (k as u64).pow(s as u32 + 1) <= BLOCK_WORDS {
        s += 1;
    }
    s
}

/// Blocks of words of length `n`, in lexicographic order of their prefixes.
fn blocks_of_length(k: usize, n: usize) -> Vec<BlockId> {
    let prefix_len = n.saturating_sub(block_suffix_len(k));
    canonical_words(k, prefix_len)
        .into_iter()
        .map(|prefix| BlockId { n, prefix })
        .collect()
}

pub fn blocks(k: usize, max_len: usize) -> Vec<BlockId> {
    (1..=max_len).flat_map(|n| blocks_of_length(k, n)).collect()
}

fn run_block(k: usize, id: &BlockId, properties: &BTreeSet<Property>) -> BlockResult {
    let mut result = BlockResult::new(id.n);
    for_each_canonical(k, id.n, &id.prefix, |w| {
        let a = analyze(w);
        result.stats.record(&a);
        result.push_findings(
            a.findings
                .into_iter()
                .filter(|f| properties.contains(&f.property)),
        );
    });
    result
}

fn thread_pool(jobs: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("cannot start {jobs} workers: {e}")))
}

/// Census and check every canonical word of length `1..=max_len`.
pub fn exhaustive_verify(config: &SweepConfig) -> Result<SweepReport> {
    config.validate()?;
    let started = Instant::now();
    let k = config.alphabet_size;
    let properties: Vec<Property> = config.properties.iter().copied().collect();
    let header = checkpoint::header_line(k, config.max_len, &properties);
    let done = match &config.checkpoint_path {
        Some(p) => checkpoint::load(p, &header)?,
        None => BTreeMap::new(),
    };

    let all = blocks(k, config.max_len);
    let mut pending: Vec<&BlockId> = all.iter().filter(|b| !done.contains_key(*b)).collect();
    let interrupted = match config.stop_after_blocks {
        Some(limit) if limit < pending.len() => {
            pending.truncate(limit);
            true
        }
        _ => false,
    };

    let state = Mutex::new(done);
    thread_pool(config.jobs)?.install(|| {
        pending.par_iter().try_for_each(|id| -> Result<()> {
            let result = run_block(k, id, &config.properties);
            let mut done = state.lock().expect("checkpoint lock poisoned");
            done.insert((*id).clone(), result);
            if let Some(p) = &config.checkpoint_path {
                checkpoint::store(p, &header, &done)?;
            }
            Ok(())
        })
    })?;
    let done = state.into_inner().expect("checkpoint lock poisoned");
    if interrupted {
        return Err(Error::Interrupted {
            completed: done.len(),
        });
    }

    let mut lengths: Vec<LengthStats> = (1..=config.max_len).map(LengthStats::new).collect();
    let mut findings = Vec::new();
    let mut findings_total = 0;
    for (id, r) in &done {
        if id.n == 0 || id.n > config.max_len {
            continue;
        }
        lengths[id.n - 1].merge(&r.stats);
        findings_total += r.findings_total;
        findings.extend(r.findings.iter().cloned());
    }
    findings.sort();
    findings.truncate(FINDINGS_CAP);
    let mut min_n_per_t = BTreeMap::new();
    for l in &lengths {
        for &t in l.t_histogram.keys() {
            min_n_per_t.entry(t).or_insert(l.n);
        }
    }
    Ok(SweepReport {
        alphabet_size: k,
        max_len: config.max_len,
        properties,
        words: lengths.iter().map(|l| l.words).sum(),
        lengths,
        min_n_per_t,
        findings_total,
        findings,
        elapsed_ms: config
            .record_timing
            .then(|| started.elapsed().as_millis() as u64),
    })
}

fn has_2fs(w: &[u8]) -> bool {
    s_sequence(w).s.windows(2).any(|p| p == [2, 2])
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Minimal2Fs {
    pub n: usize,
    /// Lexicographically smallest canonical word of length `n` with
    /// `s_i = s_{i+1} = 2` somewhere.
    pub witness: Word,
}

/// Smallest length `<= cap` admitting two adjacent positions with `s_i = 2`.
pub fn minimal_2fs_length(
    alphabet_size: usize,
    cap: usize,
    limit: &CostLimit,
) -> Result<Option<Minimal2Fs>> {
    if alphabet_size == 0 || alphabet_size > TEXT_ALPHABET {
        return Err(Error::InvalidConfig(
            "alphabet size must be between 1 and 26".into(),
        ));
    }
    limit.check(alphabet_size, cap)?;
    for n in 1..=cap {
        let found = blocks_of_length(alphabet_size, n)
            .par_iter()
            .find_map_first(|b| {
                let mut hit = None;
                for_each_canonical(alphabet_size, n, &b.prefix, |w| {
                    if hit.is_none() && has_2fs(w) {
                        hit = Some(Word::from(w));
                    }
                });
                hit
            });
        if let Some(witness) = found {
            return Ok(Some(Minimal2Fs { n, witness }));
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioRow {
    pub n: usize,
    pub max_t: usize,
    #[serde(serialize_with = "crate::generators::ratio_json")]
    pub best_ratio: Ratio<u64>,
    /// Lexicographically smallest canonical word attaining `max_t`.
    pub witness: Word,
    /// `7 max_t < n`.
    pub bound_holds: bool,
}

/// Longest run of 2's and best ratio `T / n` for every length up to
/// `max_len`.
pub fn extremal_ratio(
    alphabet_size: usize,
    max_len: usize,
    limit: &CostLimit,
) -> Result<Vec<RatioRow>> {
    if alphabet_size == 0 || alphabet_size > TEXT_ALPHABET {
        return Err(Error::InvalidConfig(
            "alphabet size must be between 1 and 26".into(),
        ));
    }
    limit.check(alphabet_size, max_len)?;
    let mut rows = Vec::new();
    for n in 1..=max_len {
        let best = blocks_of_length(alphabet_size, n)
            .par_iter()
            .map(|b| {
                let mut best: Option<(usize, Word)> = None;
                for_each_canonical(alphabet_size, n, &b.prefix, |w| {
                    let t = s_sequence(w).longest_run.length;
                    if best.as_ref().is_none_or(|(bt, _)| t > *bt) {
                        best = Some((t, Word::from(w)));
                    }
                });
                best
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            // Blocks come in lexicographic order; keep the first maximum.
            .fold(None::<(usize, Word)>, |acc, (t, w)| match acc {
                Some((at, _)) if at >= t => acc,
                _ => Some((t, w)),
            });
        let (max_t, witness) = best.expect("every length has a canonical word");
        rows.push(RatioRow {
            n,
            max_t,
            best_ratio: Ratio::new(max_t as u64, n as u64),
            witness,
            bound_holds: 7 * max_t < n,
        });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn block_layout() {
        assert_eq!(block_suffix_len(2), 12);
        assert_eq!(block_suffix_len(3), 7);
        assert_eq!(blocks_of_length(2, 12).len(), 1);
        assert_eq!(blocks_of_length(2, 15).len(), 4);
        assert_eq!(blocks_of_length(1, 9).len(), 1);
        let total: u64 = blocks(2, 14)
            .iter()
            .map(|b| {
                let mut c = 0;
                for_each_canonical(2, b.n, &b.prefix, |_| c += 1);
                c
            })
            .sum();
        assert_eq!(total, (1 << 14) - 1);
    }

    #[test]
    fn binary_up_to_ten() {
        let r = exhaustive_verify(&SweepConfig::new(2, 10)).unwrap();
        assert_eq!(r.findings_total, 0);
        assert_eq!(r.max_t(), 1);
        assert_eq!(r.two_fs_count(), 0);
        assert_eq!(r.min_n_per_t.get(&1), Some(&10));
        assert_eq!(r.words, (1 << 10) - 1);
        assert!(r.elapsed_ms.is_none());
    }

    #[test]
    fn unary_sweep() {
        let r = exhaustive_verify(&SweepConfig::new(1, 6)).unwrap();
        assert_eq!(r.max_s(), 1);
        assert_eq!(r.max_t(), 0);
        assert_eq!(r.words, 6);
        assert_eq!(r.findings_total, 0);
    }

    #[test]
    fn config_errors() {
        let mut c = SweepConfig::new(2, 20);
        assert!(matches!(
            exhaustive_verify(&c),
            Err(Error::CostCeiling { .. })
        ));
        c.max_len = 0;
        assert!(matches!(c.validate(), Err(Error::InvalidConfig(_))));
        let mut c = SweepConfig::new(0, 5);
        assert!(c.validate().is_err());
        c.alphabet_size = 2;
        c.jobs = 0;
        assert!(c.validate().is_err());
        let expensive = CostLimit {
            ceiling: 10,
            allow_expensive: true,
        };
        assert!(expensive.check(2, 20).is_ok());
    }

    #[test]
    fn ratio_table_small() {
        let rows = extremal_ratio(2, 12, &CostLimit::default()).unwrap();
        assert!(rows.iter().take(9).all(|r| r.max_t == 0));
        assert_eq!(rows[9].max_t, 1);
        assert_eq!(rows[9].best_ratio, Ratio::new(1, 10));
        assert!(rows.iter().all(|r| r.bound_holds));
    }

    #[test]
    fn minimal_2fs_absent_below_thirteen_and_unary() {
        assert_eq!(
            minimal_2fs_length(2, 12, &CostLimit::default()).unwrap(),
            None
        );
        assert_eq!(
            minimal_2fs_length(1, 30, &CostLimit::default()).unwrap(),
            None
        );
    }
}
