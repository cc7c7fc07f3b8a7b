//! `pleader` — p-leader multifractal analysis from the command line.
//!
//! Four subcommands cover the pipeline end to end: `synth` draws reference
//! data with known scaling, `analyze` runs the corrected estimation pipeline
//! on a signal or coefficient pyramid, `bench` replicates an estimator
//! benchmark from a JSON experiment description, and `hrv` ingests beat
//! interval records.
//!
//! Exit codes: 0 on success, 1 on user error (bad flags or malformed
//! input), 2 on internal failure. Runtime errors print a single
//! `error: ...` line on stderr. `PLEADER_THREADS` caps the worker pool.

mod commands;
mod error;
mod formats;
mod hrv;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgAction, Args, Parser, Subcommand};

use pleader::harness::PValue;
use pleader::mfa::{LeaderMode, WeightScheme};

use commands::{AnalyzeOptions, HrvOptions};
use error::{CliError, Result};

#[derive(Parser)]
#[command(
    name = "pleader",
    version,
    about = "p-leader multifractal analysis with finite-resolution correction"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw one realization of a source spec (process CSV or cascade pyramid JSON)
    Synth {
        /// JSON source description (a process or a cascade)
        #[arg(long)]
        spec: PathBuf,
        /// Seed of the realization; equal seeds give identical files
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Output file
        #[arg(long)]
        out: PathBuf,
    },
    /// Analyze a signal CSV or pyramid JSON into a report
    Analyze {
        /// Input: signal CSV, or pyramid JSON produced by synth
        input: PathBuf,
        #[command(flatten)]
        options: AnalyzeArgs,
        /// Report destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a Monte-Carlo benchmark described by an experiment JSON
    Bench {
        /// Experiment description
        #[arg(long)]
        spec: PathBuf,
        /// Directory receiving the summary JSON and figure CSVs
        #[arg(long)]
        outdir: PathBuf,
    },
    /// Resample a beat (RR interval) record at a uniform rate and analyze it
    Hrv {
        /// RR file: one interval per line, or time/interval pairs; `#` comments
        input: PathBuf,
        /// Resampling rate in Hz
        #[arg(long, default_value_t = hrv::DEFAULT_FS)]
        fs: f64,
        /// Wavelet vanishing moments
        #[arg(long, default_value_t = 3)]
        vanishing_moments: usize,
        /// Also write the resampled series as signal CSV
        #[arg(long)]
        resampled_out: Option<PathBuf>,
        /// Report destination; stdout when omitted
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Comma-separated aggregation exponents; `inf` for classical leaders
    #[arg(long, value_delimiter = ',')]
    p: Vec<PValue>,
    /// Comma-separated moment orders for structure functions
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    q: Vec<f64>,
    /// Highest log-cumulant order
    #[arg(long, default_value_t = 3)]
    m: usize,
    /// Finest octave of the scaling fits
    #[arg(long)]
    j1: Option<usize>,
    /// Coarsest octave of the scaling fits
    #[arg(long)]
    j2: Option<usize>,
    /// Skip the finite-resolution correction
    #[arg(long = "no-correction", action = ArgAction::SetTrue)]
    no_correction: bool,
    /// Leader neighbourhood: restricted (own cube) or full (3^d block)
    #[arg(long, default_value = "restricted")]
    mode: String,
    /// Octave weights in fits: counts or uniform
    #[arg(long, default_value = "counts")]
    weights: String,
    /// Wavelet vanishing moments for CSV inputs
    #[arg(long, default_value_t = 3)]
    vanishing_moments: usize,
}

impl AnalyzeArgs {
    fn into_options(self) -> Result<AnalyzeOptions> {
        let mode = match self.mode.as_str() {
            "restricted" => LeaderMode::Restricted,
            "full" => LeaderMode::Full,
            other => {
                return Err(CliError::usage(format!(
                    "unknown mode {other:?}; use restricted or full"
                )))
            }
        };
        let weights = match self.weights.as_str() {
            "counts" => WeightScheme::Counts,
            "uniform" => WeightScheme::Uniform,
            other => {
                return Err(CliError::usage(format!(
                    "unknown weight scheme {other:?}; use counts or uniform"
                )))
            }
        };
        Ok(AnalyzeOptions {
            p_values: if self.p.is_empty() {
                commands::default_p_values()
            } else {
                self.p
            },
            q_grid: if self.q.is_empty() { None } else { Some(self.q) },
            m_max: self.m,
            j1: self.j1,
            j2: self.j2,
            correction: !self.no_correction,
            mode,
            weights,
            vanishing_moments: self.vanishing_moments,
        })
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("PLEADER_THREADS") else {
        return Ok(());
    };
    let threads: usize = raw.parse().map_err(|_| {
        CliError::usage(format!("PLEADER_THREADS must be a positive integer, got {raw:?}"))
    })?;
    if threads == 0 {
        return Err(CliError::usage("PLEADER_THREADS must be at least 1"));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::usage(format!("cannot configure {threads} worker threads: {e}")))
}

/// Parses the command line, keeping exit semantics in our hands: help and
/// version print and succeed, any other parse failure is a user error.
fn parse_cli() -> Result<Option<Cli>> {
    use clap::error::ErrorKind;
    match Cli::try_parse() {
        Ok(cli) => Ok(Some(cli)),
        Err(e) if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) => {
            print!("{e}");
            Ok(None)
        }
        Err(e) => {
            let flat = e
                .render()
                .to_string()
                .lines()
                .map(str::trim)
                .filter(|l| !l.is_empty())
                .collect::<Vec<_>>()
                .join("; ");
            Err(CliError::usage(flat.trim_start_matches("error: ").to_owned()))
        }
    }
}

fn run() -> Result<()> {
    configure_threads()?;
    let Some(cli) = parse_cli()? else {
        return Ok(());
    };
    match cli.command {
        Command::Synth { spec, seed, out } => commands::cmd_synth(&spec, seed, &out),
        Command::Analyze { input, options, out } => {
            let options = options.into_options()?;
            commands::cmd_analyze(&input, &options, out.as_deref())
        }
        Command::Bench { spec, outdir } => commands::cmd_bench(&spec, &outdir),
        Command::Hrv {
            input,
            fs,
            vanishing_moments,
            resampled_out,
            out,
        } => {
            let options = HrvOptions {
                fs,
                vanishing_moments,
                resampled_out,
            };
            commands::cmd_hrv(&input, &options, out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match std::panic::catch_unwind(run) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(e)) => {
            let message = e.to_string().replace('\n', " ");
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
        Err(panic) => {
            let detail = panic
                .downcast_ref::<&str>()
                .map(|s| (*s).to_owned())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".to_owned());
            eprintln!("error: internal failure: {}", detail.replace('\n', " "));
            ExitCode::from(2)
        }
    }
}
