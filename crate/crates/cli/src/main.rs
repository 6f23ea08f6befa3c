//! `idealcheck`: command-line front end for the identity checks.

mod commands;
mod size;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// Usage errors exit with this code (EX_USAGE).
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "idealcheck", version, about = "Exact checks of GCD/LCM product identities for ideals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,

    /// Also write the JSON report to this file.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Symbolic check of L(n)·G(2)G(4)··· ⊆ G(1)G(3)··· for n ideals.
    Dagger(DaggerArgs),
    /// Max-min multiset identities: exhaustive small cases plus random trials.
    Lemma(LemmaArgs),
    /// Dedekind-domain equalities in valuation form.
    Star(StarArgs),
    /// Monomial-ideal counterexamples and the Z/2 × Z/2 check.
    Examples,
    /// G(k), L(k) and both product identities for concrete monomial ideals.
    Ideal(IdealArgs),
}

#[derive(Debug, Args)]
pub struct DaggerArgs {
    /// Number of ideals.
    #[arg(long)]
    pub n: usize,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub workers: usize,
    /// Memory cap for key arrays, e.g. `8GiB`.
    #[arg(long, env = "IDEALCHECK_MEMORY_CAP", default_value = "8GiB", value_parser = size::parse_size)]
    pub memory_cap: u64,
    /// Maximum counterexamples listed.
    #[arg(long, default_value_t = 100)]
    pub counterexample_cap: usize,
    /// Membership strategy.
    #[arg(long, value_enum, default_value_t = Mode::ShiftUp)]
    pub mode: Mode,
    /// Largest even factors expanded separately from the streamed base.
    #[arg(long, default_value_t = 1)]
    pub peel: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    ShiftUp,
    MaterializeQ,
}

#[derive(Debug, Args)]
pub struct LemmaArgs {
    #[arg(long, default_value_t = 1000)]
    pub trials: u64,
    /// Longest random multiset.
    #[arg(long, default_value_t = 8)]
    pub max_len: usize,
    /// Random values are drawn from 0..=max-value.
    #[arg(long, default_value_t = 9)]
    pub max_value: i64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
pub struct StarSource {
    /// File of valuation rows, one ideal per line.
    #[arg(long)]
    pub matrix: Option<PathBuf>,
    /// Comma-separated positive integers (ideals of Z).
    #[arg(long, value_delimiter = ',')]
    pub integers: Option<Vec<u64>>,
    /// Number of random valuation matrices.
    #[arg(long)]
    pub random: Option<u64>,
}

#[derive(Debug, Args)]
pub struct StarArgs {
    #[command(flatten)]
    pub source: StarSource,
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
    #[arg(long, default_value_t = 7)]
    pub max_ideals: usize,
    #[arg(long, default_value_t = 5)]
    pub max_primes: usize,
    #[arg(long, default_value_t = 12)]
    pub max_entry: u32,
}

#[derive(Debug, Args)]
pub struct IdealArgs {
    /// Ideals such as `<x^2*y, x*y^2>`.
    #[arg(required = true)]
    pub ideals: Vec<String>,
    /// Number of variables (inferred from the names used if omitted).
    #[arg(long)]
    pub vars: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match commands::run(&cli) {
        Ok(outcome) => {
            let mut stdout = std::io::stdout().lock();
            let text = match cli.format {
                Format::Json => {
                    serde_json::to_string_pretty(&outcome.json).expect("reports serialize") + "\n"
                }
                Format::Text => outcome.text,
            };
            let _ = stdout.write_all(text.as_bytes());
            if let Some(path) = &cli.out {
                let body = serde_json::to_string_pretty(&outcome.json).expect("reports serialize");
                if let Err(e) = std::fs::write(path, body + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e
                .downcast_ref::<idealcheck::Error>()
                .is_some_and(|e| matches!(e, idealcheck::Error::Domain(_) | idealcheck::Error::Parse(_)));
            ExitCode::from(if usage { EXIT_USAGE } else { 1 })
        }
    }
}
