use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use hdr_core::training::make_training;
use hdr_sim::{run_complexity_sweep, run_nmse_sweep, run_se_sweep, write_csv, ExperimentConfig, SimError};

#[derive(Debug, Parser)]
#[command(name = "hdr-sim", version, about = "Monte Carlo sweeps for RIS channel estimation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// TOML experiment config; built-in defaults when omitted
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Root seed
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Monte Carlo trials per SNR point
    #[arg(long, global = true)]
    trials: Option<usize>,
    /// Output CSV; stdout when neither this nor `output_path` is set
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Worker threads
    #[arg(long, global = true)]
    threads: Option<usize>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// NMSE versus SNR
    Nmse,
    /// Spectral efficiency versus SNR
    Se,
    /// Operation counts versus RIS size
    Complexity,
    /// Check the config and the training design, then exit
    Validate,
}

fn load(cli: &Cli) -> Result<ExperimentConfig, SimError> {
    let mut cfg = match &cli.config {
        Some(path) => ExperimentConfig::load(path)?,
        None => ExperimentConfig::default(),
    };
    if let Some(seed) = cli.seed {
        cfg.seed = seed;
    }
    if let Some(trials) = cli.trials {
        cfg.n_trials = trials;
    }
    if let Some(out) = &cli.out {
        cfg.output_path = Some(out.clone());
    }
    if let Some(threads) = cli.threads {
        cfg.threads = Some(threads);
    }
    Ok(cfg)
}

fn emit(cfg: &ExperimentConfig, rows: &[hdr_sim::Row]) -> Result<(), SimError> {
    match &cfg.output_path {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            write_csv(&mut w, rows)?;
            w.flush()?;
        }
        None => write_csv(io::stdout().lock(), rows)?,
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), SimError> {
    let cfg = load(cli)?;
    match cli.command {
        Command::Nmse => emit(&cfg, &run_nmse_sweep(&cfg)?),
        Command::Se => emit(&cfg, &run_se_sweep(&cfg)?),
        Command::Complexity => emit(&cfg, &run_complexity_sweep(&cfg)?),
        Command::Validate => {
            cfg.validate()?;
            let dims = cfg.system_dims();
            let report = make_training::<f64>(&dims)?.validate();
            println!("config_hash {}", cfg.hash());
            println!("M = {}, Q = {}, N = {}, T = {}, K = {}", dims.m(), dims.q(), dims.n(), dims.t, dims.k);
            println!("row gram deviation {:.3e}", report.row_gram_deviation);
            println!("omega modulus spread {:.3e}", report.omega_modulus_spread);
            println!("kronecker residual {:.3e}", report.kronecker_residual);
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
