//! Command-line front end for the rewb engine.
//!
//! Four subcommands: `match` decides a single query, `repeats` streams
//! the right-maximal repeat structure of a subject, `check` cross-checks
//! the fast engine against the reference engines on random instances,
//! and `bench` counts simulation steps across a family of growing
//! subjects.
//!
//! Exit codes: 0 for a match (or a successfully completed command),
//! 1 for "no match" (or a failed check), 2 for usage, pattern, or I/O
//! errors.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use rewb::{
    enum_right_maximal_repeats, match_rewb_with, parse_rewb, Alphabet, MatchOptions, MatchStats,
    RewbQuery, SuffixIndex,
};
use rewb_oracle::{brute_force_match, cubic_match, gen, Witness};

#[derive(Parser)]
#[command(
    name = "rewb",
    version,
    about = "Match regular expressions extended with one backreference"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a subject matches a pattern `e0 (e) e1 \1 e2`
    #[command(name = "match")]
    Match(MatchArgs),
    /// Stream the right-maximal repeats of a subject, one JSON line each
    Repeats(RepeatsArgs),
    /// Cross-check fast, cubic and brute-force verdicts on random instances
    Check(CheckArgs),
    /// Count simulation steps on a growing family of subjects
    Bench(BenchArgs),
}

/// Where the subject bytes come from; exactly one source.
#[derive(Args)]
#[group(required = true, multiple = false)]
struct SubjectSource {
    /// Subject given inline
    #[arg(long)]
    input: Option<String>,
    /// Read the subject from this file
    #[arg(long, value_name = "PATH")]
    input_file: Option<PathBuf>,
}

impl SubjectSource {
    /// Subject bytes, taken verbatim unless `trim` removes one trailing
    /// newline (CRLF counts as one).
    fn read(&self, trim: bool) -> Result<Vec<u8>> {
        let mut bytes = match (&self.input, &self.input_file) {
            (Some(text), None) => text.clone().into_bytes(),
            (None, Some(path)) => {
                fs::read(path).with_context(|| format!("reading {}", path.display()))?
            }
            _ => unreachable!("clap enforces exactly one source"),
        };
        if trim {
            if bytes.last() == Some(&b'\n') {
                bytes.pop();
                if bytes.last() == Some(&b'\r') {
                    bytes.pop();
                }
            }
        }
        Ok(bytes)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    /// The quadratic engine
    Fast,
    /// Per-prefix scans over every repeat, cubic time
    Cubic,
    /// Try every split of the subject
    Brute,
}

#[derive(Args)]
struct MatchArgs {
    /// The query, e.g. '((?:a|b)+)\1'
    #[arg(long)]
    pattern: String,
    #[command(flatten)]
    subject: SubjectSource,
    /// Strip one trailing newline from the subject
    #[arg(long)]
    trim: bool,
    #[arg(long, value_enum, default_value_t = Algo::Fast)]
    algo: Algo,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Bytes `.` and negated classes range over
    #[arg(long, value_parser = parse_alphabet)]
    alphabet: Option<Alphabet>,
    /// Longest subject the brute-force engine will accept
    #[arg(long, default_value_t = 64, value_name = "BYTES")]
    brute_cap: usize,
}

#[derive(Args)]
struct RepeatsArgs {
    #[command(flatten)]
    subject: SubjectSource,
    /// Strip one trailing newline from the subject
    #[arg(long)]
    trim: bool,
}

#[derive(Args)]
struct CheckArgs {
    /// Number of random instances per engine pair
    #[arg(long, default_value_t = 1000)]
    count: usize,
    /// Seed for reproducible instance generation
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Longest generated subject
    #[arg(long, default_value_t = 10)]
    max_len: usize,
    /// Node budget for each generated pattern component
    #[arg(long, default_value_t = 6)]
    budget: usize,
    /// Bytes the generated patterns and subjects draw from
    #[arg(long, default_value = "ab")]
    alphabet: String,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct BenchArgs {
    /// The query to run at every size
    #[arg(long)]
    pattern: String,
    /// Unit string repeated (and truncated) to build each subject
    #[arg(long, default_value = "abb")]
    family: String,
    /// Comma-separated subject lengths
    #[arg(long, value_delimiter = ',', default_value = "30,60,120,240")]
    sizes: Vec<usize>,
    #[arg(long, value_enum, default_value_t = Algo::Fast)]
    algo: Algo,
    /// Machine-readable output
    #[arg(long)]
    json: bool,
    /// Bytes `.` and negated classes range over
    #[arg(long, value_parser = parse_alphabet)]
    alphabet: Option<Alphabet>,
}

fn parse_alphabet_bytes(text: &str) -> Result<Vec<u8>, String> {
    if text.is_empty() || !text.is_ascii() {
        return Err("alphabet must be nonempty ASCII".into());
    }
    Ok(text.as_bytes().to_vec())
}

fn parse_alphabet(text: &str) -> Result<Alphabet, String> {
    parse_alphabet_bytes(text).map(|bytes| Alphabet::from_bytes(&bytes))
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Match(args) => cmd_match(args),
        Command::Repeats(args) => cmd_repeats(args),
        Command::Check(args) => cmd_check(args),
        Command::Bench(args) => cmd_bench(args),
    }
}

fn parse_query(pattern: &str) -> Result<RewbQuery> {
    parse_rewb(pattern).with_context(|| format!("pattern {pattern:?}"))
}

#[derive(Serialize)]
struct MatchReport {
    matched: bool,
    algo: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<StatsReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    steps: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<WitnessReport>,
}

#[derive(Serialize)]
struct StatsReport {
    repeats: usize,
    vector_steps: usize,
    row_steps: usize,
    scalar_steps: usize,
    delta_steps: usize,
}

impl From<MatchStats> for StatsReport {
    fn from(stats: MatchStats) -> StatsReport {
        StatsReport {
            repeats: stats.repeats,
            vector_steps: stats.vector_steps,
            row_steps: stats.row_steps,
            scalar_steps: stats.scalar_steps,
            delta_steps: stats.delta_steps(),
        }
    }
}

#[derive(Serialize)]
struct WitnessReport {
    i: usize,
    k: usize,
    j: usize,
}

fn cmd_match(args: MatchArgs) -> Result<ExitCode> {
    let query = parse_query(&args.pattern)?;
    let w = args.subject.read(args.trim)?;
    let alphabet = args.alphabet.unwrap_or_default();

    let report = match args.algo {
        Algo::Fast => {
            let verdict = match_rewb_with(&query, &w, &alphabet, &MatchOptions::default());
            MatchReport {
                matched: verdict.matched,
                algo: "fast",
                stats: Some(verdict.stats.into()),
                steps: None,
                witness: None,
            }
        }
        Algo::Cubic => {
            let verdict = cubic_match(&query, &w, &alphabet, false);
            MatchReport {
                matched: verdict.matched,
                algo: "cubic",
                stats: None,
                steps: Some(verdict.steps),
                witness: None,
            }
        }
        Algo::Brute => {
            if w.len() > args.brute_cap {
                bail!(
                    "subject is {} bytes; brute force is capped at {} (raise --brute-cap)",
                    w.len(),
                    args.brute_cap
                );
            }
            let witness = brute_force_match(&query, &w, &alphabet);
            MatchReport {
                matched: witness.is_some(),
                algo: "brute",
                stats: None,
                steps: None,
                witness: witness.map(|Witness { i, k, j }| WitnessReport { i, k, j }),
            }
        }
    };

    if args.json {
        println!("{}", serde_json::to_string(&report)?);
    } else if report.matched {
        let mut line = String::from("matched");
        if let Some(stats) = &report.stats {
            write!(
                line,
                " (repeats={} delta_steps={})",
                stats.repeats, stats.delta_steps
            )?;
        }
        if let Some(steps) = report.steps {
            write!(line, " (steps={steps})")?;
        }
        if let Some(witness) = &report.witness {
            write!(
                line,
                " (capture at {}, length {}, reference at {})",
                witness.i, witness.k, witness.j
            )?;
        }
        println!("{line}");
    } else {
        println!("no match");
    }
    Ok(ExitCode::from(if report.matched { 0 } else { 1 }))
}

#[derive(Serialize)]
struct RepeatLine<'a> {
    repeat: &'a str,
    len: usize,
    idx: &'a [usize],
    d: usize,
}

fn cmd_repeats(args: RepeatsArgs) -> Result<ExitCode> {
    let w = args.subject.read(args.trim)?;
    if !w.is_ascii() {
        bail!("subject must be ASCII text");
    }
    let index = SuffixIndex::new(&w);
    let mut failed = None;
    let _ = enum_right_maximal_repeats(&index, |record| {
        let alpha = record.repeat_in(&w);
        let line = RepeatLine {
            repeat: std::str::from_utf8(alpha).expect("checked ASCII"),
            len: record.len,
            idx: &record.idx,
            d: record.max_overlap(),
        };
        match serde_json::to_string(&line) {
            Ok(text) => {
                println!("{text}");
                std::ops::ControlFlow::Continue(())
            }
            Err(err) => {
                failed = Some(err);
                std::ops::ControlFlow::Break(())
            }
        }
    });
    if let Some(err) = failed {
        return Err(err.into());
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct Divergence {
    pattern: String,
    subject: String,
    seed: u64,
    instance: usize,
    fast: bool,
    cubic: bool,
    brute: bool,
}

fn cmd_check(args: CheckArgs) -> Result<ExitCode> {
    if args.budget == 0 {
        bail!("--budget must be at least 1");
    }
    let bytes = parse_alphabet_bytes(&args.alphabet).map_err(anyhow::Error::msg)?;
    let alphabet = Alphabet::from_bytes(&bytes);
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    for instance in 0..args.count {
        let query = gen::random_rewb(&mut rng, &bytes, args.budget);
        let w = gen::random_subject(&mut rng, &bytes, args.max_len);
        let fast = rewb::match_rewb(&query, &w, &alphabet);
        let cubic = cubic_match(&query, &w, &alphabet, false).matched;
        let brute = brute_force_match(&query, &w, &alphabet).is_some();
        if fast != brute || cubic != brute {
            let divergence = Divergence {
                pattern: query.to_pattern(),
                subject: String::from_utf8_lossy(&w).into_owned(),
                seed: args.seed,
                instance,
                fast,
                cubic,
                brute,
            };
            if args.json {
                println!("{}", serde_json::to_string(&divergence)?);
            } else {
                println!(
                    "divergence at instance {} (seed {}): pattern {:?} subject {:?} \
                     fast={} cubic={} brute={}",
                    divergence.instance,
                    divergence.seed,
                    divergence.pattern,
                    divergence.subject,
                    divergence.fast,
                    divergence.cubic,
                    divergence.brute,
                );
            }
            return Ok(ExitCode::from(1));
        }
    }
    if args.json {
        println!(
            "{}",
            serde_json::json!({ "checked": args.count, "divergences": 0 })
        );
    } else {
        println!("checked {} instances, no divergence", args.count);
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BenchRow {
    n: usize,
    steps: usize,
    matched: bool,
    wall_ms: f64,
}

fn cmd_bench(args: BenchArgs) -> Result<ExitCode> {
    let query = parse_query(&args.pattern)?;
    if args.family.is_empty() {
        bail!("--family must be nonempty");
    }
    if args.sizes.is_empty() {
        bail!("--sizes must list at least one length");
    }
    let alphabet = args.alphabet.unwrap_or_default();
    let unit = args.family.as_bytes();
    // every repeat is scanned at every size so counts reflect the full
    // workload rather than where the first hit happens to land
    let options = MatchOptions { exhaustive: true };
    for &n in &args.sizes {
        let mut w = unit.repeat(n.div_ceil(unit.len()));
        w.truncate(n);
        let started = Instant::now();
        let (steps, matched) = match args.algo {
            Algo::Fast => {
                let verdict = match_rewb_with(&query, &w, &alphabet, &options);
                (verdict.stats.delta_steps(), verdict.matched)
            }
            Algo::Cubic => {
                let verdict = cubic_match(&query, &w, &alphabet, true);
                (verdict.steps, verdict.matched)
            }
            Algo::Brute => bail!("bench supports --algo fast or cubic"),
        };
        let row = BenchRow {
            n,
            steps,
            matched,
            wall_ms: (started.elapsed().as_secs_f64() * 1e6).round() / 1e3,
        };
        if args.json {
            println!("{}", serde_json::to_string(&row)?);
        } else {
            println!(
                "n={} steps={} matched={} wall_ms={:.3}",
                row.n, row.steps, row.matched, row.wall_ms
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
