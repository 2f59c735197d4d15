//! Command-line front end for `specforge-core`.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod output;

use std::io::Write;

use args::{Cli, Command};
use config::{Extra, RunConfig};
use error::CliResult;
use output::Report;

/// Resolves the configuration and runs one subcommand.
pub fn execute(cli: &Cli) -> CliResult<(RunConfig, Report)> {
    let (common, extra, run): (_, _, fn(&RunConfig) -> CliResult<Report>) = match &cli.command {
        Command::Spectrum(common) => (common, Extra::default(), commands::spectrum),
        Command::Phaseshift { common, energies } => (
            common,
            Extra {
                energies: energies.as_deref(),
                ..Default::default()
            },
            commands::phaseshift,
        ),
        Command::Potential { common, recon } => (
            common,
            Extra {
                recon: Some(recon),
                ..Default::default()
            },
            commands::potential,
        ),
        Command::Wavefunction { common, grid, k, energy } => (
            common,
            Extra {
                grid: grid.as_deref(),
                k: *k,
                energy: *energy,
                ..Default::default()
            },
            commands::wavefunction,
        ),
        Command::Validate { common, recon, sizes } => (
            common,
            Extra {
                recon: Some(recon),
                sizes: sizes.as_deref(),
                ..Default::default()
            },
            commands::validate,
        ),
    };
    let cfg = RunConfig::resolve(common, &extra)?;
    let report = run(&cfg)?;
    Ok((cfg, report))
}

/// Runs the command and writes its output; returns the process exit code.
pub fn run(cli: &Cli) -> i32 {
    let result = execute(cli).and_then(|(cfg, report)| {
        for line in &report.diagnostics {
            eprintln!("{line}");
        }
        match &cfg.output {
            Some(path) => std::fs::write(path, &report.csv)?,
            None => std::io::stdout().lock().write_all(report.csv.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
