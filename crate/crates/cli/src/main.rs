use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use fsdsq::analysis::{analyze, Analysis, Property};
use fsdsq::generators::{
    build_run, extend_equal_run, extend_unequal, RunReport, UnequalOptions, Variant, DEFAULT_BUDGET,
};
use fsdsq::search::{
    exhaustive_verify, extremal_ratio, minimal_2fs_length, CostLimit, SweepConfig, SweepReport,
};
use fsdsq::squares::{render_tsv, s_sequence, CensusReport};
use fsdsq::{Error, Word};
use serde::Serialize;

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "fsdsq",
    version,
    about = "Rightmost distinct squares: census, analysis, generation and sweeps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
    Plain,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Equal,
    Unequal,
    Run,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Short,
    Long,
}

#[derive(clap::Args)]
struct Input {
    /// A word over a-z, or a file path with --file
    input: String,
    /// Read the word from a file (whitespace is ignored)
    #[arg(short = 'f', long = "file")]
    file: bool,
}

impl Input {
    fn word(&self) -> Result<Word, Failure> {
        let text = if self.file {
            std::fs::read_to_string(&self.input)
                .map_err(|e| Failure::usage(format!("{}: {e}", self.input)))?
        } else {
            self.input.clone()
        };
        let clean: String = text.split_whitespace().collect();
        clean
            .parse()
            .map_err(|e: Error| Failure::usage(e.to_string()))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print s_i for every position plus the distinct-square count and longest run
    Census {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// FS-double squares, 2FS classifications, adjacent mates and every checked claim
    Analyze {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Build words with long runs of s_i = 2
    Generate {
        #[arg(long, value_enum)]
        kind: Kind,
        /// Run length to reach (kind run)
        #[arg(long)]
        target: Option<usize>,
        /// Seed word (kinds equal and unequal)
        #[arg(long)]
        seed: Option<String>,
        #[arg(long, value_enum, default_value = "short")]
        variant: VariantArg,
        /// Frontier position for kind unequal (default: end of the longest run)
        #[arg(long)]
        frontier: Option<usize>,
        #[arg(long, default_value_t = 2)]
        alphabet_size: usize,
        /// Candidate words censused per unequal step before giving up
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
    },
    /// Exhaustively check every canonical word up to a length
    Verify {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        max_len: usize,
        /// Resume from and record progress in this file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        /// Worker threads (default: available cores)
        #[arg(long)]
        jobs: Option<usize>,
        /// Comma-separated subset of properties to report (default: all)
        #[arg(long, value_delimiter = ',')]
        properties: Vec<String>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Omit the elapsed time so identical runs print identical bytes
        #[arg(long)]
        deterministic: bool,
        /// Run even if alphabet_size^max_len exceeds the cost ceiling
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Largest run of 2's and best ratio T/n per length
    Extremal {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
        #[arg(long)]
        allow_expensive: bool,
    },
    /// Shortest length with two adjacent positions s_i = s_(i+1) = 2
    #[command(name = "minimal-2fs")]
    Minimal2Fs {
        #[arg(long)]
        alphabet_size: usize,
        #[arg(long)]
        cap: usize,
        #[arg(long, value_enum, default_value = "plain")]
        format: Format,
        #[arg(long)]
        allow_expensive: bool,
    },
}

/// Exit status 1 (usage, I/O) or 2 (mathematical finding).
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { code: 1, message }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Self {
            code: if e.is_finding() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct Versioned<'a, T: Serialize> {
    schema_version: u32,
    #[serde(flatten)]
    body: &'a T,
}

fn json<T: Serialize>(body: &T) -> String {
    let v = Versioned {
        schema_version: SCHEMA_VERSION,
        body,
    };
    serde_json::to_string_pretty(&v).expect("report serializes") + "\n"
}

fn summary(c: &CensusReport) -> String {
    let r = c.longest_run;
    format!(
        "n\t{}\ndistinct_squares\t{}\nlongest_run\t{}\nlongest_run_start\t{}\n",
        c.n(),
        c.distinct_square_count,
        r.length,
        r.start
    )
}

fn census(input: &Input, format: Format) -> Result<String, Failure> {
    let c = s_sequence(&input.word()?);
    Ok(match format {
        Format::Json => json(&c),
        Format::Tsv => {
            eprint!("{}", summary(&c));
            render_tsv(&c)
        }
        Format::Plain => {
            let mut out = String::new();
            for (i, (&ch, &s)) in c.word.iter().zip(&c.s).enumerate() {
                let letter = fsdsq::word::letter(ch).unwrap_or('?');
                let _ = writeln!(out, "{:>6}  {letter}  {s}", i + 1);
            }
            out.push_str(&summary(&c).replace('\t', ": "));
            out
        }
    })
}

#[derive(Serialize)]
struct AnalysisJson<'a> {
    word: &'a Word,
    n: usize,
    s: &'a [u32],
    distinct_square_count: usize,
    #[serde(rename = "T")]
    t: usize,
    fs_double_squares: &'a [fsdsq::FsDoubleSquare],
    two_fs: &'a [fsdsq::TwoFsClassification],
    mates: &'a [fsdsq::analysis::AdjacentMate],
    equal_chains: &'a [fsdsq::twofs::EqualChain],
    findings: &'a [fsdsq::Finding],
}

fn render_analysis(a: &Analysis, format: Format) -> String {
    let c = &a.census;
    match format {
        Format::Json => json(&AnalysisJson {
            word: &c.word,
            n: c.n(),
            s: &c.s,
            distinct_square_count: c.distinct_square_count,
            t: a.longest_run(),
            fs_double_squares: &a.fs_double_squares,
            two_fs: &a.two_fs,
            mates: &a.mates,
            equal_chains: &a.equal_chains,
            findings: &a.findings,
        }),
        Format::Tsv => {
            let mut out = String::from("position\tsq_len\tSQ_len\tx1\tx2\tp1\tp2\t2fs\tmate\n");
            for d in &a.fs_double_squares {
                let f = &d.factorization;
                let kind = a
                    .two_fs
                    .iter()
                    .find(|t| t.position == d.position)
                    .map_or("-", |t| match t.kind {
                        fsdsq::TwoFsKind::Equal => "equal",
                        fsdsq::TwoFsKind::Unequal => "unequal",
                    });
                let mate = a
                    .mates
                    .iter()
                    .find(|m| m.position == d.position)
                    .map_or("-", |m| m.mate.label.name());
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{kind}\t{mate}",
                    d.position, d.sq_len, d.big_len, f.x1, f.x2, f.p1, f.p2
                );
            }
            for f in &a.findings {
                eprintln!(
                    "finding\t{}\t{}\t{}",
                    f.property,
                    f.position.unwrap_or(0),
                    f.detail
                );
            }
            out
        }
        Format::Plain => {
            let mut out = format!(
                "word {} (n = {}, {} distinct squares, T = {})\n",
                c.word,
                c.n(),
                c.distinct_square_count,
                a.longest_run()
            );
            let _ = writeln!(out, "FS-double squares: {}", a.fs_double_squares.len());
            for d in &a.fs_double_squares {
                let f = &d.factorization;
                let _ = writeln!(
                    out,
                    "  at {}: |sq| = {}, |SQ| = {}, x1 = {}, x2 = {}, p1 = {}, p2 = {}",
                    d.position, d.sq_len, d.big_len, f.x1, f.x2, f.p1, f.p2
                );
            }
            let _ = writeln!(out, "2FS squares: {}", a.two_fs.len());
            for t in &a.two_fs {
                let kind = match t.kind {
                    fsdsq::TwoFsKind::Equal => "equal",
                    fsdsq::TwoFsKind::Unequal => "unequal",
                };
                let mate = a
                    .mates
                    .iter()
                    .find(|m| m.position == t.position)
                    .map_or("?", |m| m.mate.label.name());
                let passed = t.checks.iter().filter(|c| c.pass).count();
                let _ = writeln!(
                    out,
                    "  at {}: {kind}, mate {mate}, checks {passed}/{}",
                    t.position,
                    t.checks.len()
                );
            }
            for ch in &a.equal_chains {
                let _ = writeln!(
                    out,
                    "equal chain at {}: {} squares (bounds {} / {})",
                    ch.start, ch.count, ch.bound_counting_first, ch.bound_added
                );
            }
            let _ = writeln!(out, "findings: {}", a.findings.len());
            for f in &a.findings {
                let _ = writeln!(out, "  {} at {:?}: {}", f.property, f.position, f.detail);
            }
            out
        }
    }
}

fn render_run(r: &RunReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Tsv => {
            let mut out =
                String::from("step\tkind\tfrontier\tlength\tgained\tSQ_len\tnew_SQ_len\n");
            for (i, s) in r.steps.iter().enumerate() {
                let kind = serde_json::to_value(s.kind).expect("kind serializes");
                let _ = writeln!(
                    out,
                    "{i}\t{}\t{}\t{}\t{}\t{}\t{}",
                    kind.as_str().unwrap_or("?"),
                    s.frontier,
                    s.length,
                    s.gained,
                    s.frontier_big_len,
                    s.new_big_len.map_or("-".into(), |v| v.to_string())
                );
            }
            eprintln!(
                "word\t{}\nn\t{}\nT\t{}\nratio\t{}",
                r.word, r.n, r.t, r.ratio
            );
            out
        }
        Format::Plain => {
            let mut out = format!("{}\n", r.word);
            let _ = writeln!(
                out,
                "n = {}, T = {} (run starts at {}), ratio = {}, 7T < n: {}",
                r.n, r.t, r.run_start, r.ratio, r.bound_holds
            );
            for f in &r.findings {
                let _ = writeln!(out, "finding: {f}");
            }
            out
        }
    }
}

fn generate(
    kind: Kind,
    target: Option<usize>,
    seed: Option<&str>,
    variant: VariantArg,
    frontier: Option<usize>,
    opts: UnequalOptions,
) -> Result<RunReport, Failure> {
    let seed_word = || -> Result<Word, Failure> {
        let s = seed.ok_or_else(|| Failure::usage("--seed is required for this kind".into()))?;
        s.parse().map_err(|e: Error| Failure::usage(e.to_string()))
    };
    Ok(match kind {
        Kind::Equal => extend_equal_run(&seed_word()?)?,
        Kind::Unequal => {
            let w = seed_word()?;
            let frontier = match frontier {
                Some(f) => f,
                None => {
                    let run = s_sequence(&w).longest_run;
                    if run.length == 0 {
                        return Err(Failure::usage("seed has no position with s_i = 2".into()));
                    }
                    run.start + run.length - 1
                }
            };
            let variant = match variant {
                VariantArg::Short => Variant::Short,
                VariantArg::Long => Variant::Long,
            };
            extend_unequal(&w, frontier, variant, &opts)?
        }
        Kind::Run => {
            let t =
                target.ok_or_else(|| Failure::usage("--target is required for kind run".into()))?;
            build_run(t, opts.alphabet_size)?
        }
    })
}

fn render_sweep(r: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => json(r),
        Format::Tsv | Format::Plain => {
            let mut out = String::from(
                "n\twords\tmax_distinct_squares\tmax_s\tmax_T\tfs_positions\ttwo_fs_equal\ttwo_fs_unequal\n",
            );
            for l in &r.lengths {
                let _ = writeln!(
                    out,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    l.n,
                    l.words,
                    l.max_distinct_squares,
                    l.max_s,
                    l.max_t,
                    l.fs_positions,
                    l.two_fs_equal,
                    l.two_fs_unequal
                );
            }
            if !r.findings.is_empty() {
                out.push_str("\nproperty\tword\tposition\tdetail\n");
                for f in &r.findings {
                    let pos = f.position.map_or("-".into(), |p| p.to_string());
                    let _ = writeln!(out, "{}\t{}\t{pos}\t{}", f.property, f.word, f.detail);
                }
            }
            if format == Format::Plain {
                let _ = writeln!(out, "\nfindings: {}", r.findings_total);
            }
            out
        }
    }
}

fn cost_limit(allow_expensive: bool) -> Result<CostLimit, Failure> {
    let mut limit = CostLimit::from_env()?;
    limit.allow_expensive = allow_expensive;
    Ok(limit)
}

fn run(cli: Cli) -> Result<(String, bool), Failure> {
    match cli.command {
        Command::Census { input, format } => Ok((census(&input, format)?, false)),
        Command::Analyze { input, format } => {
            let a = analyze(&input.word()?);
            Ok((render_analysis(&a, format), !a.findings.is_empty()))
        }
        Command::Generate {
            kind,
            target,
            seed,
            variant,
            frontier,
            alphabet_size,
            budget,
            format,
        } => {
            let opts = UnequalOptions {
                alphabet_size,
                budget,
            };
            let r = generate(kind, target, seed.as_deref(), variant, frontier, opts)?;
            Ok((render_run(&r, format), !r.findings.is_empty()))
        }
        Command::Verify {
            alphabet_size,
            max_len,
            checkpoint,
            jobs,
            properties,
            format,
            deterministic,
            allow_expensive,
        } => {
            let mut config = SweepConfig::new(alphabet_size, max_len);
            config.checkpoint_path = checkpoint;
            config.jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
            config.limit = cost_limit(allow_expensive)?;
            config.record_timing = !deterministic;
            if !properties.is_empty() {
                config.properties = properties
                    .iter()
                    .map(|p| p.parse::<Property>())
                    .collect::<Result<_, _>>()?;
            }
            let r = exhaustive_verify(&config)?;
            Ok((render_sweep(&r, format), r.findings_total > 0))
        }
        Command::Extremal {
            alphabet_size,
            max_len,
            format,
            allow_expensive,
        } => {
            let rows = extremal_ratio(alphabet_size, max_len, &cost_limit(allow_expensive)?)?;
            let violated = rows.iter().any(|r| !r.bound_holds);
            let out = match format {
                Format::Json => json(&serde_json::json!({ "rows": rows })),
                Format::Tsv | Format::Plain => {
                    let mut out = String::from("n\tmax_T\tratio\twitness\tbound_holds\n");
                    for r in &rows {
                        let _ = writeln!(
                            out,
                            "{}\t{}\t{}\t{}\t{}",
                            r.n, r.max_t, r.best_ratio, r.witness, r.bound_holds
                        );
                    }
                    out
                }
            };
            Ok((out, violated))
        }
        Command::Minimal2Fs {
            alphabet_size,
            cap,
            format,
            allow_expensive,
        } => {
            let found = minimal_2fs_length(alphabet_size, cap, &cost_limit(allow_expensive)?)?;
            let out = match format {
                Format::Json => json(&serde_json::json!({ "cap": cap, "result": found })),
                Format::Tsv => match &found {
                    Some(m) => format!("n\twitness\n{}\t{}\n", m.n, m.witness),
                    None => "n\twitness\n-\t-\n".into(),
                },
                Format::Plain => match &found {
                    Some(m) => format!("{} (witness {})\n", m.n, m.witness),
                    None => format!("none up to {cap}\n"),
                },
            };
            Ok((out, false))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok((out, finding)) => {
            print!("{out}");
            if finding {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(f) => {
            eprintln!("fsdsq: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
