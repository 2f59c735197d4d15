use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

#[derive(Debug, Parser)]
#[command(name = "specforge", version, about = "Spectra, wavefunctions and potentials from designed energy maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Bound-state energies and weights
    Spectrum(Common),
    /// Scattering phase shift over an energy range
    Phaseshift {
        #[command(flatten)]
        common: Common,
        /// Energy range start:stop:step
        #[arg(long, allow_hyphen_values = true)]
        energies: Option<String>,
    },
    /// Reconstructed potential V(x) on a grid
    Potential {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        recon: Recon,
    },
    /// Bound or continuum wavefunction on a grid
    Wavefunction {
        #[command(flatten)]
        common: Common,
        /// Space grid start:stop:step
        #[arg(long, allow_hyphen_values = true)]
        grid: Option<String>,
        /// Bound level
        #[arg(long)]
        k: Option<usize>,
        /// Energy (bound level, continuum, or anything else for the divergence check)
        #[arg(long, allow_hyphen_values = true)]
        energy: Option<f64>,
    },
    /// Morse reconstruction error against the exact potential, per N
    Validate {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        recon: Recon,
        /// Comma-separated truncation sizes
        #[arg(long)]
        sizes: Option<String>,
    },
}

/// Flags shared by every subcommand. All optional so a config file can
/// supply them.
#[derive(Debug, Args, Default)]
pub struct Common {
    /// morse | radial | expgauss | sinh
    #[arg(long)]
    pub system: Option<String>,
    /// fig1 | fig2 | fig3 | fig4
    #[arg(long)]
    pub preset: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub mu: Option<f64>,
    /// Defaults to -mu
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<f64>,
    /// Defaults to 1
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<f64>,
    /// Defaults to a
    #[arg(long, allow_hyphen_values = true)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub ell: Option<u32>,
    /// Truncation size (default 60)
    #[arg(long)]
    pub n: Option<usize>,
    /// key = value file; flags override it
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Write CSV here instead of stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args, Default)]
pub struct Recon {
    /// Space grid start:stop:step
    #[arg(long, allow_hyphen_values = true)]
    pub grid: Option<String>,
    /// series | quadfit
    #[arg(long)]
    pub method: Option<String>,
}
