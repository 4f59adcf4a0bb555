//! Command implementations for the `lcsfinder` binary.
//!
//! Every command writes its primary output to a caller-supplied writer so the
//! same code paths serve the binary and the tests.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use lcsfinder_core::bench::{self, Algorithm, BenchConfig};
use lcsfinder_core::{
    cross_entropy_rate, parse_integer_sequence, self_entropy_rate, synth, tokenize,
    CrossEntropyMode, EntropyReport, LcsIndex, MatchQuery, TokenSequence, VocabMap,
};

#[derive(Debug, Parser)]
#[command(
    name = "lcsfinder",
    version,
    about = "Match lengths and entropy rates of token sequences"
)]
pub struct Cli {
    /// Write the primary output to this file instead of stdout.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Λ for each "i j" query (target start, source prefix length).
    Lcs {
        source: PathBuf,
        target: PathBuf,
        queries: PathBuf,
        #[command(flatten)]
        format: TokenFormat,
    },
    /// Self-entropy rate of one token file.
    Entropy {
        file: PathBuf,
        #[command(flatten)]
        format: TokenFormat,
        #[command(flatten)]
        report: ReportFlags,
    },
    /// Cross-entropy rate of a target given the history of a source.
    Xentropy {
        source: PathBuf,
        target: PathBuf,
        #[arg(long, value_enum, default_value_t = XMode::Positional)]
        mode: XMode,
        /// "i j" pairs for --mode mapped.
        #[arg(long)]
        pairs: Option<PathBuf>,
        #[command(flatten)]
        format: TokenFormat,
        #[command(flatten)]
        report: ReportFlags,
    },
    /// Write an i.i.d. uniform integer token file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 4)]
        vocab: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Time the all-(i, i) match-length workload over a grid of lengths; CSV output.
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct TokenFormat {
    /// Token files hold one non-negative integer per line.
    #[arg(long, conflicts_with = "strings")]
    pub ints: bool,
    /// Token files hold one raw symbol per line (default).
    #[arg(long)]
    pub strings: bool,
}

#[derive(Debug, Clone, Copy, Default, Args)]
pub struct ReportFlags {
    /// Emit a single-line JSON record.
    #[arg(long)]
    pub json: bool,
    /// Also print every Λ value, one per line (text output only).
    #[arg(long)]
    pub profile: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum XMode {
    Positional,
    FullHistory,
    Mapped,
}

#[derive(Debug, Clone, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 0.25)]
    pub min_exp: f64,
    #[arg(long, default_value_t = 5.0)]
    pub max_exp: f64,
    #[arg(long, default_value_t = 0.25)]
    pub step: f64,
    #[arg(long, default_value_t = 30)]
    pub trials: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 4)]
    pub vocab: u32,
    /// Comma-separated subset of lcsfinder,brute.
    #[arg(long, value_delimiter = ',', default_value = "lcsfinder,brute")]
    pub algos: Vec<String>,
    /// Largest N at which brute runs.
    #[arg(long, default_value_t = 3000)]
    pub brute_cap: usize,
}

impl BenchArgs {
    pub fn config(&self) -> Result<BenchConfig> {
        let algorithms = self
            .algos
            .iter()
            .map(|a| a.parse::<Algorithm>())
            .collect::<Result<Vec<_>, _>>()?;
        let cfg = BenchConfig {
            min_exp: self.min_exp,
            max_exp: self.max_exp,
            step: self.step,
            trials: self.trials,
            seed: self.seed,
            vocab: self.vocab,
            algorithms,
            brute_cap: self.brute_cap,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Serialize)]
struct ReportRecord<'a> {
    n: usize,
    lambda_sum: u64,
    entropy_bits: f64,
    mode: &'a str,
}

/// Runs `cli`, writing primary output to `out` and diagnostics to `diag`.
pub fn run(cli: &Cli, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    match &cli.command {
        Command::Lcs {
            source,
            target,
            queries,
            format,
        } => cmd_lcs(source, target, queries, *format, out),
        Command::Entropy {
            file,
            format,
            report,
        } => cmd_entropy(file, *format, *report, out),
        Command::Xentropy {
            source,
            target,
            mode,
            pairs,
            format,
            report,
        } => cmd_xentropy(
            source,
            target,
            *mode,
            pairs.as_deref(),
            *format,
            *report,
            out,
        ),
        Command::Gen { n, vocab, seed } => cmd_gen(*n, *vocab, *seed, out),
        Command::Bench(args) => cmd_bench(&args.config()?, out, diag),
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load(path: &Path, format: TokenFormat, vocab: &mut VocabMap) -> Result<TokenSequence> {
    let text = read(path)?;
    if format.ints {
        parse_integer_sequence(text.lines()).with_context(|| format!("parsing {}", path.display()))
    } else {
        Ok(tokenize(text.lines(), vocab))
    }
}

/// Loads source then target over one shared vocabulary.
pub fn load_pair(
    source: &Path,
    target: &Path,
    format: TokenFormat,
) -> Result<(TokenSequence, TokenSequence)> {
    let mut vocab = VocabMap::new();
    let s = load(source, format, &mut vocab)?;
    let t = load(target, format, &mut vocab)?;
    Ok((s, t))
}

/// Parses "i j" lines; blank lines are skipped, line numbers are 1-based.
pub fn parse_queries(text: &str) -> Result<Vec<MatchQuery>> {
    let mut queries = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace().map(str::parse::<usize>);
        match (fields.next(), fields.next(), fields.next()) {
            (Some(Ok(i)), Some(Ok(j)), None) => queries.push(MatchQuery::new(i, j)),
            _ => bail!("line {}: invalid query", idx + 1),
        }
    }
    Ok(queries)
}

// Line number of the n-th non-blank line.
fn query_line(text: &str, nth: usize) -> usize {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .nth(nth)
        .map_or(nth + 1, |(i, _)| i + 1)
}

fn check_queries(index: &LcsIndex, queries: &[MatchQuery], text: &str) -> Result<()> {
    for (n, &q) in queries.iter().enumerate() {
        if let Err(e) = index.check(q) {
            bail!("line {}: query out of range ({e})", query_line(text, n));
        }
    }
    Ok(())
}

pub fn cmd_lcs(
    source: &Path,
    target: &Path,
    queries: &Path,
    format: TokenFormat,
    out: &mut dyn Write,
) -> Result<()> {
    let (s, t) = load_pair(source, target, format)?;
    let text = read(queries)?;
    let queries = parse_queries(&text)?;
    let index = LcsIndex::build(&s, &t);
    check_queries(&index, &queries, &text)?;
    for lambda in index.batch_lambda(&queries)? {
        writeln!(out, "{lambda}")?;
    }
    Ok(())
}

fn write_report(
    report: &EntropyReport,
    mode: &str,
    flags: ReportFlags,
    out: &mut dyn Write,
) -> Result<()> {
    if flags.json {
        let record = ReportRecord {
            n: report.n_positions,
            lambda_sum: report.lambda_sum,
            entropy_bits: report.entropy_bits,
            mode,
        };
        writeln!(out, "{}", serde_json::to_string(&record)?)?;
        return Ok(());
    }
    writeln!(out, "entropy_bits: {:.6}", report.entropy_bits)?;
    writeln!(out, "n: {}", report.n_positions)?;
    writeln!(out, "lambda_sum: {}", report.lambda_sum)?;
    writeln!(out, "mode: {mode}")?;
    writeln!(out, "unit: bits per token (log base 2)")?;
    if flags.profile {
        writeln!(out, "lambdas:")?;
        for l in &report.lambdas {
            writeln!(out, "{l}")?;
        }
    }
    Ok(())
}

pub fn cmd_entropy(
    file: &Path,
    format: TokenFormat,
    flags: ReportFlags,
    out: &mut dyn Write,
) -> Result<()> {
    let x = load(file, format, &mut VocabMap::new())?;
    let report: EntropyReport = self_entropy_rate(&x)?;
    write_report(&report, "self", flags, out)
}

pub fn cmd_xentropy(
    source: &Path,
    target: &Path,
    mode: XMode,
    pairs: Option<&Path>,
    format: TokenFormat,
    flags: ReportFlags,
    out: &mut dyn Write,
) -> Result<()> {
    let (s, t) = load_pair(source, target, format)?;
    let mode = match (mode, pairs) {
        (XMode::Positional, None) => CrossEntropyMode::Positional,
        (XMode::FullHistory, None) => CrossEntropyMode::FullHistory,
        (XMode::Mapped, Some(path)) => CrossEntropyMode::Mapped(parse_queries(&read(path)?)?),
        (XMode::Mapped, None) => bail!("--mode mapped requires --pairs"),
        (_, Some(_)) => bail!("--pairs is only valid with --mode mapped"),
    };
    let report: EntropyReport = cross_entropy_rate(&s, &t, &mode)?;
    write_report(&report, mode.name(), flags, out)
}

pub fn cmd_gen(n: usize, vocab: u32, seed: u64, out: &mut dyn Write) -> Result<()> {
    if vocab < 1 {
        bail!("vocab must be >= 1");
    }
    for v in synth::uniform_raw(n, vocab, seed) {
        writeln!(out, "{v}")?;
    }
    Ok(())
}

pub fn cmd_bench(cfg: &BenchConfig, out: &mut dyn Write, diag: &mut dyn Write) -> Result<()> {
    bench::write_csv_header(out)?;
    let mut io_err = None;
    let samples = bench::run(cfg, |s| {
        if io_err.is_none() {
            io_err = bench::write_csv_row(out, s).and_then(|_| out.flush()).err();
        }
    })?;
    if let Some(e) = io_err {
        return Err(e.into());
    }
    for &algo in &cfg.algorithms {
        match bench::slope(&samples, algo) {
            Some(slope) => writeln!(
                diag,
                "slope {algo}: {slope:.3} (log10 median seconds vs log10 N)"
            )?,
            None => writeln!(diag, "slope {algo}: n/a (fewer than two lengths)")?,
        }
    }
    Ok(())
}
