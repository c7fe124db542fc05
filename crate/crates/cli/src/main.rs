//! `ueb`: construct, verify and analyse unitary error bases exactly.
//!
//! Every invocation prints one JSON report line on stdout and a short
//! summary on stderr. Exit status is 0 when every check passes, 1 when a
//! check fails and 2 when the input cannot be parsed or used.

mod commands;
mod files;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::RunReport;

const DEFAULT_SEED: u64 = 0x165;

#[derive(Parser)]
#[command(name = "ueb", version, about = "Exact construction and verification of unitary error bases")]
struct Cli {
    /// Seed for every sampled check.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    /// One report per line.
    Json,
    Pretty,
}

#[derive(Subcommand)]
enum Command {
    /// Build a basis: pauli:d, nice --group G, sam L H, counterexample165.
    Construct(ConstructArgs),
    /// Check a basis or combinatorial input against its definition.
    Verify(VerifyArgs),
    /// Report structural properties of a basis.
    Analyze(AnalyzeArgs),
}

#[derive(Args)]
pub(crate) struct ConstructArgs {
    pub kind: String,
    /// For `sam`: the Latin square and Hadamard specs, in that order.
    pub params: Vec<String>,
    #[arg(long)]
    pub group: Option<String>,
    /// cyclic:d or a JSON file of integer rows.
    #[arg(long)]
    pub latin: Option<String>,
    /// fourier:d, halpha[:symbol] or a JSON file of matrices.
    #[arg(long)]
    pub hadamard: Option<String>,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Where to write the counterexample bundle.
    #[arg(long)]
    pub export: Option<PathBuf>,
    /// Leave dense 165x165 generators out of the bundle.
    #[arg(long)]
    pub factors_only: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum VerifyKind {
    Ueb,
    Nice,
    Hadamard,
    Latin,
    Counterexample165,
}

#[derive(Args)]
pub(crate) struct VerifyArgs {
    #[arg(value_enum)]
    pub kind: VerifyKind,
    pub input: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub(crate) enum AnalyzeKind {
    Monomial,
    Sparsity,
    Wickedness,
    Cocycle,
    Induce,
}

#[derive(Args)]
pub(crate) struct AnalyzeArgs {
    #[arg(value_enum)]
    pub kind: AnalyzeKind,
    pub input: Option<PathBuf>,
    /// For `induce`: heisenberg:d.
    #[arg(long)]
    pub group: Option<String>,
    /// For `induce`: center, trivial or whole.
    #[arg(long, default_value = "center")]
    pub from: String,
    /// For `induce`: trivial, zeta^z or zeta^<k>z.
    #[arg(long, default_value = "zeta^z")]
    pub character: String,
    /// For `induce`: write the induced matrices here.
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

fn run(cli: &Cli, report: &mut RunReport) -> anyhow::Result<()> {
    match &cli.command {
        Command::Construct(a) => commands::construct(a, report),
        Command::Verify(a) => commands::verify(a, cli.seed, report),
        Command::Analyze(a) => commands::analyze(a, cli.seed, report),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let command: Vec<String> = std::env::args().skip(1).collect();
    let mut report = RunReport::new(command, cli.seed);
    if let Err(e) = run(&cli, &mut report) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    let report = report.finish();
    let line = match cli.format {
        Format::Json => serde_json::to_string(&report),
        Format::Pretty => serde_json::to_string_pretty(&report),
    };
    match line {
        Ok(line) => println!("{line}"),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    eprint!("{}", report.summary());
    if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
