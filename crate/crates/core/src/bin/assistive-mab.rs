//! Command-line experiment runner.
//!
//! Exit codes: 0 success, 1 usage error, 2 config/validation error,
//! 3 runtime failure.

use assistive_mab::harness::{run_experiment, write_reference_files, ExperimentConfig};
use assistive_mab::{selftest, Error};
use clap::error::ErrorKind;
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_USAGE: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_RUNTIME: u8 = 3;

#[derive(Parser)]
#[command(
    name = "assistive-mab",
    version,
    about = "Seeded bandit experiments with a biased human model and an assistive robot"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment described by a config file.
    Run {
        /// Experiment config (INI).
        #[arg(long)]
        config: PathBuf,
        /// Output directory (overrides the config and ASSISTIVE_MAB_OUT).
        #[arg(long)]
        out: Option<PathBuf>,
        /// Master seed override.
        #[arg(long)]
        seed: Option<u64>,
        /// Trial count override.
        #[arg(long)]
        trials: Option<usize>,
        /// Horizon override.
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Write the two reference instances (d1.ini, d2.ini) and a default
    /// config.ini.
    Reference {
        /// Directory to write into.
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the built-in check battery and exit 0 if everything passes.
    Selftest,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help / --version print to stdout and succeed; everything
            // else is a usage error on stderr.
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };

    match cli.command {
        Command::Run {
            config,
            out,
            seed,
            trials,
            horizon,
        } => {
            let mut cfg = match ExperimentConfig::from_ini_file(&config) {
                Ok(cfg) => cfg,
                Err(e) => return report(e, EXIT_CONFIG),
            };
            if let Some(dir) = out.or_else(|| std::env::var_os("ASSISTIVE_MAB_OUT").map(PathBuf::from))
            {
                cfg.output_dir = dir;
            }
            if let Some(seed) = seed {
                cfg.master_seed = seed;
            }
            if let Some(trials) = trials {
                cfg.trials = trials;
            }
            if let Some(horizon) = horizon {
                cfg.horizon = horizon;
            }
            if let Err(e) = cfg.validate() {
                return report(e, EXIT_CONFIG);
            }
            match run_experiment(&cfg) {
                Ok(summary) => {
                    println!(
                        "wrote transcripts.csv, summary.csv, report.txt to {}",
                        cfg.output_dir.display()
                    );
                    for g in &summary.groups {
                        println!(
                            "{}: mean return {:.4} (std {:.4}, n {})",
                            g.name, g.mean, g.std, g.n
                        );
                    }
                    ExitCode::SUCCESS
                }
                Err(e) => report_runtime(e),
            }
        }
        Command::Reference { out } => match write_reference_files(&out) {
            Ok(files) => {
                for f in files {
                    println!("wrote {}", f.display());
                }
                ExitCode::SUCCESS
            }
            Err(e) => report_runtime(e),
        },
        Command::Selftest => {
            let outcomes = selftest::run_all();
            let mut all_ok = true;
            for o in &outcomes {
                let status = if o.passed { "ok  " } else { "FAIL" };
                println!("{status} {:<28} {}", o.name, o.detail);
                all_ok &= o.passed;
            }
            if all_ok {
                println!("selftest: {} checks passed", outcomes.len());
                ExitCode::SUCCESS
            } else {
                eprintln!("selftest: failures detected");
                ExitCode::from(EXIT_RUNTIME)
            }
        }
    }
}

fn report(e: Error, code: u8) -> ExitCode {
    eprintln!("error: {e}");
    ExitCode::from(code)
}

/// Validation/parse failures signal a bad config even when they surface
/// mid-run; I/O and exhaustion are runtime failures.
fn report_runtime(e: Error) -> ExitCode {
    let code = match &e {
        Error::Validation(_) | Error::Parse { .. } | Error::Domain(_) => EXIT_CONFIG,
        Error::Io(_) | Error::ExhaustedStream { .. } => EXIT_RUNTIME,
    };
    report(e, code)
}
