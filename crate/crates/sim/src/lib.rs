//! Seeded Monte Carlo sweeps over the HDR, KRF and LS estimators with CSV
//! output.

pub mod config;
pub mod driver;
pub mod error;
pub mod output;

pub use config::{DimsConfig, ExperimentConfig, MethodSel};
pub use driver::{
    complexity_dims, nmse_trials, run_complexity_sweep, run_nmse_sweep, run_se_sweep, se_trials, trial_rng, Metric,
    TrialTable,
};
pub use error::SimError;
pub use output::{write_csv, Row};
