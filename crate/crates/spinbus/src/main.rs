use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use spinbus::cli::{self, Command};

#[derive(Debug, Clone, Copy, ValueEnum)]
enum BackendArg {
    Sum,
    Resolvent,
}

impl BackendArg {
    fn name(self) -> &'static str {
        match self {
            BackendArg::Sum => "sum",
            BackendArg::Resolvent => "resolvent",
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "spinbus",
    version,
    about = "Spin-bus simulations: effective couplings, gates, and fluctuation errors for two coupled XXZ chains"
)]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Debug, Parser)]
struct CommonArgs {
    /// JSON configuration file.
    #[arg(long)]
    config: PathBuf,
    /// Output CSV path (stdout when omitted).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Override the γ backend from the config.
    #[arg(long, value_enum)]
    backend: Option<BackendArg>,
    /// Worker threads for sweep points (0 = library default).
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Cmd {
    /// Eigenvalues of the configured ladder (with analytic columns at L=2).
    Spectrum(CommonArgs),
    /// Anisotropy sweep of the nearest-pair coupling and effective anisotropy.
    Fig1(CommonArgs),
    /// Distance profile of the coupling plus the length sweep.
    Fig2(CommonArgs),
    /// Fluctuation-error map on the (δ_m, δ_n) grid.
    Fig3(CommonArgs),
    /// Effective coupling γ for one node pair.
    Gamma(CommonArgs),
    /// Gate error at a single fluctuation point.
    GateError(CommonArgs),
    /// Adiabatic criterion for the configured pair.
    Adiabatic(CommonArgs),
    /// Oracle validation suite (exit 1 on any failed row).
    Validate(CommonArgs),
}

impl Cmd {
    fn split(&self) -> (Command, &CommonArgs) {
        match self {
            Cmd::Spectrum(a) => (Command::Spectrum, a),
            Cmd::Fig1(a) => (Command::Fig1, a),
            Cmd::Fig2(a) => (Command::Fig2, a),
            Cmd::Fig3(a) => (Command::Fig3, a),
            Cmd::Gamma(a) => (Command::Gamma, a),
            Cmd::GateError(a) => (Command::GateError, a),
            Cmd::Adiabatic(a) => (Command::Adiabatic, a),
            Cmd::Validate(a) => (Command::Validate, a),
        }
    }
}

fn main() -> ExitCode {
    let args = Cli::parse();
    let (command, common) = args.command.split();
    match cli::execute(
        command,
        &common.config,
        common.out.as_deref(),
        common.backend.map(BackendArg::name),
        common.jobs,
    ) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("spinbus {}: {e}", command.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
