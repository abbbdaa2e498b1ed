//! Command-line driver: structured JSON config in, CSV tables out.
//!
//! Exit codes: 0 ok, 1 validation failure, 2 config error, 3 numerical
//! non-convergence.

pub mod commands;
pub mod config;
pub mod table;

use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
pub use config::SweepConfig;
pub use table::{Cell, ResultTable};

/// The available subcommands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Fig1,
    Fig2,
    Fig3,
    Gamma,
    GateError,
    Adiabatic,
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Fig1 => "fig1",
            Command::Fig2 => "fig2",
            Command::Fig3 => "fig3",
            Command::Gamma => "gamma",
            Command::GateError => "gate-error",
            Command::Adiabatic => "adiabatic",
            Command::Validate => "validate",
        }
    }
}

/// Result of one command run: named tables and the validation verdict.
#[derive(Debug)]
pub struct RunOutcome {
    /// (suffix, table); the first table writes to the output path as-is,
    /// later ones insert their suffix before the extension.
    pub tables: Vec<(&'static str, ResultTable)>,
    pub all_passed: bool,
}

/// Run a command against a parsed config.
pub fn run_command(command: Command, cfg: &SweepConfig) -> Result<RunOutcome> {
    let outcome = match command {
        Command::Spectrum => RunOutcome {
            tables: vec![("", commands::cmd_spectrum(cfg)?)],
            all_passed: true,
        },
        Command::Fig1 => RunOutcome {
            tables: vec![("", commands::cmd_fig1(cfg)?)],
            all_passed: true,
        },
        Command::Fig2 => {
            let (profile, lsweep) = commands::cmd_fig2(cfg)?;
            RunOutcome {
                tables: vec![("", profile), ("lsweep", lsweep)],
                all_passed: true,
            }
        }
        Command::Fig3 => RunOutcome {
            tables: vec![("", commands::cmd_fig3(cfg)?)],
            all_passed: true,
        },
        Command::Gamma => RunOutcome {
            tables: vec![("", commands::cmd_gamma(cfg)?)],
            all_passed: true,
        },
        Command::GateError => RunOutcome {
            tables: vec![("", commands::cmd_gate_error(cfg)?)],
            all_passed: true,
        },
        Command::Adiabatic => RunOutcome {
            tables: vec![("", commands::cmd_adiabatic(cfg)?)],
            all_passed: true,
        },
        Command::Validate => {
            let (table, all_passed) = commands::cmd_validate(cfg)?;
            RunOutcome {
                tables: vec![("", table)],
                all_passed,
            }
        }
    };
    Ok(outcome)
}

/// Derive the output path of a secondary table: `out.csv` + "lsweep" →
/// `out.lsweep.csv`.
pub fn suffixed_path(base: &Path, suffix: &str) -> PathBuf {
    if suffix.is_empty() {
        return base.to_path_buf();
    }
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}.{suffix}.{ext}"))
}

/// Load a config file, apply flag overrides, run, and write outputs.
/// Returns the process exit code.
pub fn execute(
    command: Command,
    config_path: &Path,
    out: Option<&Path>,
    backend_override: Option<&str>,
    jobs_override: Option<usize>,
) -> Result<i32> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| Error::config(format!("cannot read {}: {e}", config_path.display())))?;
    let mut cfg = SweepConfig::from_json(&text)?;
    if let Some(b) = backend_override {
        cfg.backend = Some(b.to_string());
    }
    if let Some(j) = jobs_override {
        cfg.jobs = j;
    }
    cfg.backend()?; // fail early on a bad name
    let out_path = out
        .map(Path::to_path_buf)
        .or_else(|| cfg.out.as_ref().map(PathBuf::from));
    if let Some(ref base) = out_path {
        if let Some(parent) = base.parent() {
            if !parent.as_os_str().is_empty() && !parent.is_dir() {
                return Err(Error::config(format!(
                    "output directory {} does not exist",
                    parent.display()
                )));
            }
        }
    }

    let run = || run_command(command, &cfg);
    let outcome = if cfg.jobs > 0 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.jobs)
            .build()
            .map_err(|e| Error::config(format!("cannot build a {}-thread pool: {e}", cfg.jobs)))?;
        pool.install(run)?
    } else {
        run()?
    };

    match out_path {
        Some(base) => {
            for (suffix, table) in &outcome.tables {
                table.write_to(&suffixed_path(&base, suffix))?;
            }
        }
        None => {
            for (_, table) in &outcome.tables {
                print!("{}", table.render());
            }
        }
    }
    Ok(if outcome.all_passed { 0 } else { 1 })
}
