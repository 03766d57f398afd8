//! `translit`: build, apply and evaluate transliteration models from the
//! command line.
//!
//! Exit codes: 0 success, 2 usage or parse error, 3 model or build failure.
//! Diagnostics go to stderr; stdout carries data only.

mod commands;
mod error;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use error::CliError;

#[derive(Debug, Parser)]
#[command(name = "translit", version, about = "Pair-LM transliteration toolkit")]
struct Cli {
    /// Log progress to stderr (repeat for more detail).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Train a transliterator bundle from a lexicon TSV.
    Build(BuildArgs),
    /// Transliterate words read from stdin, one per line.
    Translit(TranslitArgs),
    /// Rewrite lexicons with agreement- or frequency-based filtering.
    Prep(PrepArgs),
    /// Normalize a corpus to Latin script through the union of bundles.
    Normalize(NormalizeArgs),
    /// Compute per-language augmentation multipliers.
    Balance(BalanceArgs),
    /// Score a hypothesis file against a reference file.
    Score(ScoreArgs),
}

#[derive(Debug, clap::Args)]
struct BuildArgs {
    /// Lexicon TSV: native<TAB>romanization[<TAB>count].
    lexicon: PathBuf,
    /// Output bundle directory (created if missing).
    out_dir: PathBuf,
    /// Language tag recorded in the manifest [default: lexicon file stem].
    #[arg(long)]
    language: Option<String>,
    /// Pair n-gram order.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u8).range(1..=9))]
    order: u8,
    /// Maximum EM iterations.
    #[arg(long, default_value_t = 10)]
    em_iters: usize,
    /// Stop EM when the log-likelihood gain falls below this.
    #[arg(long, default_value_t = 1e-6, value_parser = non_negative)]
    em_tol: f64,
    /// Omit the creation time from the manifest.
    #[arg(long)]
    no_timestamp: bool,
}

#[derive(Debug, clap::Args)]
struct TranslitArgs {
    /// Bundle directories; more than one decodes through their union.
    #[arg(required = true)]
    bundles: Vec<PathBuf>,
    /// Map Latin input back to native script.
    #[arg(long)]
    reverse: bool,
    /// Candidates per word.
    #[arg(short, long, default_value_t = 5, value_parser = clap::value_parser!(u16).range(1..=100))]
    k: u16,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Mode {
    /// Agreement-based (needs at least two lexicons).
    Ab,
    /// Frequency-based.
    Fb,
    /// Agreement-based, then frequency-based (experimental).
    #[value(name = "ab+fb")]
    AbFb,
}

#[derive(Debug, clap::Args)]
struct PrepArgs {
    #[arg(long, value_enum)]
    mode: Mode,
    /// Directory for the rewritten lexicons (same file names as the inputs).
    #[arg(long)]
    out_dir: PathBuf,
    /// Lexicon TSVs; the file stem is the language tag.
    #[arg(required = true)]
    lexicons: Vec<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct NormalizeArgs {
    /// Corpus file, one transcript per line (`-` for stdin).
    corpus: PathBuf,
    /// Bundle directory; repeat for several languages.
    #[arg(short, long = "bundle", required = true)]
    bundles: Vec<PathBuf>,
    /// Copy Latin tokens verbatim instead of lowercasing them.
    #[arg(long)]
    passthrough_latin: bool,
    /// Write a JSON report here.
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct BalanceArgs {
    /// Lines of `language<TAB>amount` (hours or utterances).
    amounts: PathBuf,
    /// Copies of the smallest language.
    #[arg(long, default_value_t = 75.0, value_parser = positive)]
    cap: f64,
}

#[derive(Debug, clap::Args)]
struct ScoreArgs {
    /// Reference transcripts, one per line, optionally `uttid<TAB>text`.
    reference: PathBuf,
    /// Hypothesis transcripts, parallel to the reference.
    hypothesis: PathBuf,
    /// Bundles enabling transliteration-optimized WER; repeatable.
    #[arg(short, long = "bundle")]
    bundles: Vec<PathBuf>,
    /// Romanization candidates per native-script token.
    #[arg(short, long, default_value_t = 5, value_parser = clap::value_parser!(u16).range(1..=100))]
    k: u16,
    /// Write a JSON report (totals and per utterance) here.
    #[arg(long)]
    report: Option<PathBuf>,
}

fn non_negative(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a non-negative number")),
    }
}

fn positive(s: &str) -> Result<f64, String> {
    match s.parse::<f64>() {
        Ok(v) if v > 0.0 && v.is_finite() => Ok(v),
        _ => Err(format!("`{s}` is not a positive number")),
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Build(a) => commands::build::run(a),
        Command::Translit(a) => commands::translit::run(a),
        Command::Prep(a) => commands::prep::run(a),
        Command::Normalize(a) => commands::normalize::run(a),
        Command::Balance(a) => commands::balance::run(a),
        Command::Score(a) => commands::score::run(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    env_logger::Builder::new()
        .filter_level(level)
        .format_timestamp(None)
        .init();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("translit: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
