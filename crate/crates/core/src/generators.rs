//! Words with long runs of `s_i = 2`.
//!
//! Two extension steps are available at the run frontier (the last position
//! of the run, whose FS-double square `SQ²` must be a suffix of the word):
//!
//! * equal: append the prefix letters of `SQ²` one at a time; each accepted
//!   letter shifts the FS-double square by one position onto a conjugate.
//! * unequal: replace the tail after the frontier letter `a` by a new
//!   `SQ'²` built from `V = (SQ² without a) · b`, so that `|SQ'| > 2|SQ|`.
//!
//! Every candidate is accepted only after a full census; construction data
//! in the reports is informational.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::fsds::{fs_double_squares_in, FsDoubleSquare};
use crate::squares::{s_sequence, CensusReport, RunOfTwos};
use crate::twofs::{chain_bound_added, classify_pair, TwoFsKind};
use crate::word::Word;

/// Candidate evaluations allowed per unequal step unless configured.
pub const DEFAULT_BUDGET: usize = 20_000;

/// Middle block of the unequal template `V m V`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    /// `m = a b`.
    Short,
    /// `m = V a b`.
    Long,
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "short" => Ok(Variant::Short),
            "long" => Ok(Variant::Long),
            other => Err(Error::InvalidConfig(format!("unknown variant {other:?}"))),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Short => "short",
            Variant::Long => "long",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum StepKind {
    Seed,
    Equal,
    Unequal,
}

/// How an unequal extension was found.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Method {
    Template {
        variant: Variant,
    },
    /// `SQ' = V^p1 V[..prefix_len] V^p2`.
    Structured {
        p1: usize,
        p2: usize,
        prefix_len: usize,
    },
    /// Plain letters appended to the word.
    Search {
        appended: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Step {
    pub kind: StepKind,
    /// 1-based frontier position the step extended from.
    pub frontier: usize,
    /// Word length after the step.
    pub length: usize,
    /// `|SQ|` of the frontier square before the step.
    pub frontier_big_len: usize,
    /// Run positions gained (equal steps may gain several).
    pub gained: usize,
    /// `|SQ|` of the new frontier square (unequal steps).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub new_big_len: Option<usize>,
    /// Lemma 13 ceiling for the equal chain started at the frontier.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ceiling: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", flatten)]
    pub method: Option<Method>,
}

/// A word with its census-verified longest run of 2's.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub word: Word,
    pub n: usize,
    #[serde(rename = "T")]
    pub t: usize,
    pub run_start: usize,
    #[serde(serialize_with = "ratio_json")]
    pub ratio: Ratio<u64>,
    /// `7 T < n`.
    pub bound_holds: bool,
    pub steps: Vec<Step>,
    pub findings: Vec<String>,
}

pub(crate) fn ratio_json<S: Serializer>(r: &Ratio<u64>, s: S) -> Result<S::Ok, S::Error> {
    #[derive(Serialize)]
    struct Frac {
        num: u64,
        den: u64,
    }
    Frac {
        num: *r.numer(),
        den: *r.denom(),
    }
    .serialize(s)
}

/// Census-derived `T` and exact ratio `T / |w|`.
pub fn ratio_report(w: &[u8]) -> RunReport {
    report_from_census(&s_sequence(w), Vec::new())
}

fn report_from_census(census: &CensusReport, steps: Vec<Step>) -> RunReport {
    let n = census.n();
    let run = census.longest_run;
    let ratio = if n == 0 {
        Ratio::from_integer(0)
    } else {
        Ratio::new(run.length as u64, n as u64)
    };
    let bound_holds = 7 * run.length < n || n == 0;
    let mut findings = Vec::new();
    if !bound_holds {
        findings.push(format!("7T >= n: T = {}, n = {n}", run.length));
    }
    RunReport {
        word: census.word.clone(),
        n,
        t: run.length,
        run_start: run.start,
        ratio,
        bound_holds,
        steps,
        findings,
    }
}

/// FS-double square at `frontier` whose `SQ²` ends the word.
fn frontier_square(census: &CensusReport, frontier: usize) -> Result<FsDoubleSquare> {
    let fs = fs_double_squares_in(census)?;
    let sq = fs
        .into_iter()
        .find(|f| f.position == frontier)
        .ok_or(Error::BadSeed("no FS-double square at the frontier"))?;
    if sq.end() != census.n() {
        return Err(Error::BadSeed(
            "frontier square SQ^2 is not a suffix of the word",
        ));
    }
    Ok(sq)
}

/// Does the run of 2's starting at `run_start` cover `upto` (1-based)?
fn run_reaches(census: &CensusReport, run_start: usize, upto: usize) -> bool {
    upto <= census.n()
        && run_start >= 1
        && census.s[run_start - 1..upto].iter().all(|&v| v == 2)
        && (run_start == 1 || census.s[run_start - 2] != 2)
}

/// Equal extension from `frontier`: append prefix letters of the frontier
/// `SQ²` while the run through the frontier keeps growing. Returns the new
/// word, its census and the number of letters appended.
fn extend_equal_at(w: &Word, frontier: usize) -> Result<(Word, CensusReport, usize, Step)> {
    let census = s_sequence(w);
    let fs = frontier_square(&census, frontier)?;
    let f = &fs.factorization;
    if f.conjugate_lcp() == 0 {
        return Err(Error::NoEqualExtension);
    }
    let run = census
        .run_containing(frontier)
        .ok_or(Error::BadSeed("frontier is not in a run of 2's"))?;
    let square: Vec<u8> = w[frontier - 1..].to_vec();
    let mut best = (w.clone(), census, 0usize);
    for (j, &c) in square.iter().enumerate() {
        let mut next = best.0.clone();
        next.push(c);
        let nc = s_sequence(&next);
        if !run_reaches(&nc, run.start, frontier + j + 1) {
            break;
        }
        best = (next, nc, j + 1);
    }
    let step = Step {
        kind: StepKind::Equal,
        frontier,
        length: best.0.len(),
        frontier_big_len: fs.big_len,
        gained: best.2,
        new_big_len: None,
        ceiling: Some(chain_bound_added(f)),
        method: None,
    };
    Ok((best.0, best.1, best.2, step))
}

/// Extend a seed `SQ²` (an FS-double square at position 1 spanning the
/// whole word) by equal FS-double squares.
pub fn extend_equal_run(seed: &[u8]) -> Result<RunReport> {
    let seed = Word::from(seed);
    let census = s_sequence(&seed);
    let fs = fs_double_squares_in(&census)?;
    match fs.first() {
        Some(f) if f.position == 1 && f.end() == seed.len() => {}
        _ => {
            return Err(Error::BadSeed(
                "seed must be SQ^2 for an FS-double square at position 1",
            ))
        }
    }
    let (_, census, appended, step) = extend_equal_at(&seed, 1)?;
    let ceiling = step.ceiling.unwrap_or(0);
    let mut report = report_from_census(&census, vec![seed_step(&seed, 1, &fs[0]), step]);
    if appended > ceiling {
        report.findings.push(format!(
            "equal extension added {appended} squares, above the Lemma 13 ceiling {ceiling}"
        ));
    }
    Ok(report)
}

fn seed_step(w: &Word, frontier: usize, fs: &FsDoubleSquare) -> Step {
    Step {
        kind: StepKind::Seed,
        frontier,
        length: w.len(),
        frontier_big_len: fs.big_len,
        gained: 0,
        new_big_len: None,
        ceiling: None,
        method: None,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct UnequalOptions {
    pub alphabet_size: usize,
    /// Maximum number of candidate words censused.
    pub budget: usize,
}

impl Default for UnequalOptions {
    fn default() -> Self {
        Self {
            alphabet_size: 2,
            budget: DEFAULT_BUDGET,
        }
    }
}

struct Accepted {
    word: Word,
    census: CensusReport,
    new_big_len: usize,
    method: Method,
}

/// Accept `candidate` if the run through `frontier` grows by the position
/// `frontier + 1`, whose FS-double square is a suffix forming an unequal
/// 2FS square with the one at `frontier`.
fn accept(
    candidate: Word,
    run_start: usize,
    frontier: usize,
    method: Method,
) -> Result<Option<Accepted>> {
    let census = s_sequence(&candidate);
    if !run_reaches(&census, run_start, frontier + 1) {
        return Ok(None);
    }
    let fs = fs_double_squares_in(&census)?;
    let at = |p: usize| fs.iter().find(|f| f.position == p);
    let (Some(first), Some(second)) = (at(frontier), at(frontier + 1)) else {
        return Ok(None);
    };
    if second.end() != census.n() {
        return Ok(None);
    }
    let pair = classify_pair(first, second)?;
    if pair.kind != TwoFsKind::Unequal {
        return Ok(None);
    }
    Ok(Some(Accepted {
        word: candidate,
        census,
        new_big_len: second.big_len,
        method,
    }))
}

/// First accepted candidate in list order among at most `budget` of them.
fn first_accepted<T: Sync>(
    items: &[T],
    build: impl Fn(&T) -> (Word, Method) + Sync,
    run_start: usize,
    frontier: usize,
) -> Result<Option<Accepted>> {
    items
        .par_iter()
        .find_map_first(|item| {
            let (word, method) = build(item);
            accept(word, run_start, frontier, method).transpose()
        })
        .transpose()
}

fn unequal_step(
    w: &Word,
    frontier: usize,
    variant: Variant,
    opts: &UnequalOptions,
) -> Result<(Accepted, Step)> {
    if opts.alphabet_size < 2 {
        return Err(Error::UnaryAlphabet);
    }
    let census = s_sequence(w);
    let fs = frontier_square(&census, frontier)?;
    let run = census
        .run_containing(frontier)
        .ok_or(Error::BadSeed("frontier is not in a run of 2's"))?;
    let a = w[frontier - 1];
    let head = &w[..frontier];
    let tail = &w[frontier..];
    let breakers: Vec<u8> = (0..opts.alphabet_size as u8).filter(|&b| b != a).collect();
    let b = breakers[0];
    let mut remaining = opts.budget;

    let found = 'search: {
        // Template: V m V with V = tail b.
        if remaining > 0 {
            remaining -= 1;
            let v = [tail, &[b]].concat();
            let m = match variant {
                Variant::Short => vec![a, b],
                Variant::Long => [&v[..], &[a, b]].concat(),
            };
            let root = [&v[..], &m[..], &v[..]].concat();
            let cand = Word::concat(&[head, &root, &root]);
            if let Some(acc) = accept(cand, run.start, frontier, Method::Template { variant })? {
                break 'search Some(acc);
            }
        }

        // Structured: SQ' = V^p1 V[..l] V^p2, shortest first.
        let mut shapes = Vec::new();
        for &b in &breakers {
            let vlen = tail.len() + 1;
            for p1 in 1..=3usize {
                for p2 in 1..=p1 {
                    for l in 1..vlen {
                        shapes.push((vlen * (p1 + p2) + l, b, p1, p2, l));
                    }
                }
            }
        }
        let build = |&(_, b, p1, p2, l): &(usize, u8, usize, usize, usize)| {
            let v = [tail, &[b]].concat();
            let root = [v.repeat(p1), v[..l].to_vec(), v.repeat(p2)].concat();
            (
                Word::concat(&[head, &root, &root]),
                Method::Structured {
                    p1,
                    p2,
                    prefix_len: l,
                },
            )
        };
        shapes.sort_by(|x, y| x.0.cmp(&y.0).then_with(|| build(x).0.cmp(&build(y).0)));
        shapes.truncate(remaining);
        remaining -= shapes.len();
        if let Some(acc) = first_accepted(&shapes, build, run.start, frontier)? {
            break 'search Some(acc);
        }

        // Raw breadth-first search over appended letters.
        let k = opts.alphabet_size as u64;
        let mut len = 1u32;
        while remaining > 0 {
            let count = k.checked_pow(len).unwrap_or(u64::MAX);
            let take = count.min(remaining as u64);
            let codes: Vec<u64> = (0..take).collect();
            remaining -= take as usize;
            let build = |&code: &u64| {
                let mut suffix = vec![0u8; len as usize];
                let mut c = code;
                for slot in suffix.iter_mut().rev() {
                    *slot = (c % k) as u8;
                    c /= k;
                }
                (
                    Word::concat(&[w, &suffix]),
                    Method::Search {
                        appended: len as usize,
                    },
                )
            };
            if let Some(acc) = first_accepted(&codes, build, run.start, frontier)? {
                break 'search Some(acc);
            }
            len += 1;
        }
        None
    };

    let acc = found.ok_or(Error::BudgetExhausted {
        budget: opts.budget,
    })?;
    let step = Step {
        kind: StepKind::Unequal,
        frontier,
        length: acc.word.len(),
        frontier_big_len: fs.big_len,
        gained: 1,
        new_big_len: Some(acc.new_big_len),
        ceiling: None,
        method: Some(acc.method.clone()),
    };
    Ok((acc, step))
}

fn doubling_finding(step: &Step) -> Option<String> {
    let new = step.new_big_len?;
    (new <= 2 * step.frontier_big_len).then(|| {
        format!(
            "unequal step at {} gave |SQ'| = {new}, not above 2|SQ| = {}",
            step.frontier,
            2 * step.frontier_big_len
        )
    })
}

/// One unequal (doubling) step from an FS-double square at `frontier`
/// whose `SQ²` is a suffix of `w`.
pub fn extend_unequal(
    w: &[u8],
    frontier: usize,
    variant: Variant,
    opts: &UnequalOptions,
) -> Result<RunReport> {
    let w = Word::from(w);
    let (acc, step) = unequal_step(&w, frontier, variant, opts)?;
    let fs = frontier_square(&s_sequence(&w), frontier)?;
    let finding = doubling_finding(&step);
    let mut report = report_from_census(&acc.census, vec![seed_step(&w, frontier, &fs), step]);
    report.findings.extend(finding);
    Ok(report)
}

/// Smallest FS-double square, `(abaab)²`.
pub const RUN_SEED: &str = "abaababaab";

/// Alternate equal and unequal steps from `(abaab)²` until the longest run
/// of 2's reaches `target`.
pub fn build_run(target: usize, alphabet_size: usize) -> Result<RunReport> {
    if alphabet_size < 2 {
        return Err(Error::UnaryAlphabet);
    }
    if target == 0 {
        return Err(Error::InvalidConfig("target must be at least 1".into()));
    }
    let mut w: Word = RUN_SEED.parse()?;
    let mut census = s_sequence(&w);
    let seed_fs = frontier_square(&census, 1)?;
    let mut steps = vec![seed_step(&w, 1, &seed_fs)];
    let mut findings = Vec::new();
    let opts = UnequalOptions {
        alphabet_size,
        budget: DEFAULT_BUDGET,
    };
    let mut last_equal = false;
    loop {
        let run: RunOfTwos = census.longest_run;
        if run.length >= target {
            break;
        }
        let frontier = run.start + run.length - 1;
        if !last_equal {
            match extend_equal_at(&w, frontier) {
                Ok((next, nc, appended, step)) if appended > 0 => {
                    let ceiling = step.ceiling.unwrap_or(0);
                    if appended > ceiling {
                        findings.push(format!(
                            "equal step at {frontier} added {appended}, above the Lemma 13 ceiling {ceiling}"
                        ));
                    }
                    w = next;
                    census = nc;
                    steps.push(step);
                    last_equal = true;
                    continue;
                }
                Ok(_) | Err(Error::NoEqualExtension) => {}
                Err(e) => return Err(e),
            }
        }
        let (acc, step) = unequal_step(&w, frontier, Variant::Short, &opts)?;
        findings.extend(doubling_finding(&step));
        w = acc.word;
        census = acc.census;
        steps.push(step);
        last_equal = false;
    }
    let mut report = report_from_census(&census, steps);
    report.findings.splice(0..0, findings);
    Ok(report)
}
