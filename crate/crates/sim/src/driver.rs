//! Monte Carlo sweeps. Trial `i` draws everything from its own ChaCha stream,
//! so results do not depend on scheduling or the number of worker threads.

use hdr_core::channel::{build_channels, sample_params, SystemDims};
use hdr_core::complexity::{flops_analytic, flops_measured};
use hdr_core::metrics::{ideal_spectral_efficiency, nmse, spectral_efficiency};
use hdr_core::pipeline::{
    build_permutations, hdr_estimate, krf_estimate, ls_estimate, matched_filter, simulate_observation, Method,
};
use hdr_core::training::make_training;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::config::{ExperimentConfig, MethodSel};
use crate::error::SimError;
use crate::output::Row;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Metric {
    Nmse,
    Se,
}

impl Metric {
    pub fn as_str(self) -> &'static str {
        match self {
            Metric::Nmse => "nmse",
            Metric::Se => "se",
        }
    }
}

/// Per-trial values of one metric, indexed `[method][snr][trial]`.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialTable {
    pub metric: Metric,
    pub methods: Vec<MethodSel>,
    pub snr_db: Vec<f64>,
    values: Vec<Vec<Vec<f64>>>,
}

impl TrialTable {
    pub fn values(&self, method: MethodSel, snr_idx: usize) -> Option<&[f64]> {
        let m = self.methods.iter().position(|&x| x == method)?;
        self.values[m].get(snr_idx).map(Vec::as_slice)
    }

    pub fn mean(&self, method: MethodSel, snr_idx: usize) -> Option<f64> {
        self.values(method, snr_idx).map(mean)
    }

    pub fn median(&self, method: MethodSel, snr_idx: usize) -> Option<f64> {
        self.values(method, snr_idx).map(median)
    }

    pub fn n_trials(&self) -> usize {
        self.values.first().and_then(|v| v.first()).map_or(0, Vec::len)
    }

    /// Mean and median rows, methods outermost, then SNR in grid order.
    pub fn rows(&self, config_hash: &str) -> Vec<Row> {
        let mut rows = Vec::new();
        for (m, &method) in self.methods.iter().enumerate() {
            for (s, &snr) in self.snr_db.iter().enumerate() {
                let v = &self.values[m][s];
                for (stat, value) in [("mean", mean(v)), ("median", median(v))] {
                    rows.push(Row {
                        method: method.to_string(),
                        snr_db: Some(snr),
                        metric: self.metric.as_str().into(),
                        stat: stat.into(),
                        value,
                        n_trials: v.len(),
                        config_hash: config_hash.into(),
                    });
                }
            }
        }
        rows
    }
}

/// Neumaier-compensated mean.
fn mean(v: &[f64]) -> f64 {
    let (mut sum, mut comp) = (0.0f64, 0.0f64);
    for &x in v {
        let t = sum + x;
        if sum.abs() >= x.abs() {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    (sum + comp) / v.len() as f64
}

fn median(v: &[f64]) -> f64 {
    let mut s = v.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    }
}

/// Stream `trial` of the generator seeded with `seed`.
pub fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn pool(cfg: &ExperimentConfig) -> Result<rayon::ThreadPool, SimError> {
    Ok(rayon::ThreadPoolBuilder::new().num_threads(cfg.threads.unwrap_or(0)).build()?)
}

fn snr_lin(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn run_trials(cfg: &ExperimentConfig, metric: Metric) -> Result<TrialTable, SimError> {
    cfg.validate()?;
    let dims = cfg.system_dims();
    let td = make_training::<f64>(&dims)?;
    let plan = build_permutations(&dims);
    let methods: Vec<MethodSel> =
        cfg.methods.iter().copied().filter(|m| metric == Metric::Se || *m != MethodSel::Ideal).collect();
    if methods.is_empty() {
        return Err(SimError::Invalid(format!("no method produces {}", metric.as_str())));
    }

    // [snr][method] per trial
    let trial = |i: usize| -> Result<Vec<Vec<f64>>, SimError> {
        let mut rng = trial_rng(cfg.seed, i);
        let params = match &cfg.angles_deg {
            Some(a) => a.to_params(),
            None => sample_params(&mut rng),
        };
        let ch = build_channels(&dims, &params);
        cfg.snr_grid_db
            .iter()
            .map(|&snr| {
                // same normalized noise at every SNR point
                let mut noise = rng.clone();
                let obs = simulate_observation(&ch, &td, 1.0 / snr_lin(snr), &mut noise)?;
                let e = matched_filter(&obs, &td)?;
                let link_sigma2 = cfg.p_t / snr_lin(snr);
                methods
                    .iter()
                    .map(|&m| {
                        let est = match m.estimator() {
                            Some(Method::Hdr) => hdr_estimate(&e, &plan, &dims)?,
                            Some(Method::Krf) => krf_estimate(&e, &dims)?,
                            Some(Method::Ls) => ls_estimate(&e),
                            None => return Ok(ideal_spectral_efficiency(&dims, cfg.p_t, link_sigma2)),
                        };
                        Ok(match metric {
                            Metric::Nmse => nmse(&ch.e, &est.e_hat)?,
                            Metric::Se => spectral_efficiency(&ch, &est, cfg.p_t, link_sigma2)?,
                        })
                    })
                    .collect()
            })
            .collect()
    };

    let per_trial =
        pool(cfg)?.install(|| (0..cfg.n_trials).into_par_iter().map(trial).collect::<Result<Vec<_>, _>>())?;

    let values = (0..methods.len())
        .map(|m| (0..cfg.snr_grid_db.len()).map(|s| per_trial.iter().map(|t| t[s][m]).collect()).collect())
        .collect();
    Ok(TrialTable { metric, methods, snr_db: cfg.snr_grid_db.clone(), values })
}

/// Per-trial NMSE of every estimator (the Ideal entry is skipped).
pub fn nmse_trials(cfg: &ExperimentConfig) -> Result<TrialTable, SimError> {
    run_trials(cfg, Metric::Nmse)
}

/// Per-trial spectral efficiency, including the Ideal benchmark.
pub fn se_trials(cfg: &ExperimentConfig) -> Result<TrialTable, SimError> {
    run_trials(cfg, Metric::Se)
}

pub fn run_nmse_sweep(cfg: &ExperimentConfig) -> Result<Vec<Row>, SimError> {
    Ok(nmse_trials(cfg)?.rows(&cfg.hash()))
}

pub fn run_se_sweep(cfg: &ExperimentConfig) -> Result<Vec<Row>, SimError> {
    Ok(se_trials(cfg)?.rows(&cfg.hash()))
}

/// Dims of one complexity grid point: the configured BS and UE arrays, the
/// given RIS, and the smallest training budget `T = M`, `K = N`.
pub fn complexity_dims(cfg: &ExperimentConfig, n_y: usize, n_z: usize) -> SystemDims {
    let mut d = cfg.system_dims();
    d.n_y = n_y;
    d.n_z = n_z;
    d.t = d.m();
    d.k = d.n();
    d
}

/// Analytic counts for every grid point, plus instrumented counts for RIS
/// sizes up to `measured_max_n`.
pub fn run_complexity_sweep(cfg: &ExperimentConfig) -> Result<Vec<Row>, SimError> {
    cfg.validate()?;
    if cfg.n_grid.is_empty() {
        return Err(SimError::Invalid("n_grid is empty".into()));
    }
    let hash = cfg.hash();
    let methods: Vec<Method> = cfg.methods.iter().filter_map(|m| m.estimator()).collect();
    let sigma2 = 1.0 / snr_lin(cfg.snr_grid_db[0]);
    let mut rows = Vec::new();
    for &[n_y, n_z] in &cfg.n_grid {
        let dims = complexity_dims(cfg, n_y, n_z);
        let stat = format!("N={}", dims.n());
        let row = |method: Method, metric: &str, value: f64, n_trials: usize| Row {
            method: method.to_string(),
            snr_db: None,
            metric: metric.into(),
            stat: stat.clone(),
            value,
            n_trials,
            config_hash: hash.clone(),
        };
        for &m in &methods {
            rows.push(row(m, "flops_analytic", flops_analytic(m, &dims) as f64, 0));
        }
        if dims.n() <= cfg.measured_max_n {
            let td = make_training::<f64>(&dims)?;
            let plan = build_permutations(&dims);
            let mut rng = trial_rng(cfg.seed, 0);
            let params = match &cfg.angles_deg {
                Some(a) => a.to_params(),
                None => sample_params(&mut rng),
            };
            let ch = build_channels(&dims, &params);
            for &m in &methods {
                let (_, macs) = flops_measured(m, &ch, &td, &plan, sigma2, &mut rng.clone())?;
                rows.push(row(m, "flops_measured", macs as f64, 1));
            }
        }
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compensated_mean() {
        let v = [1e16, 1.0, -1e16, 1.0];
        assert_eq!(mean(&v), 0.5);
        assert_eq!(mean(&[2.0]), 2.0);
    }

    #[test]
    fn medians() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), 2.0);
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), 2.5);
    }

    #[test]
    fn streams_differ_per_trial() {
        use rand::RngCore;
        let a = trial_rng(7, 0).next_u64();
        let b = trial_rng(7, 1).next_u64();
        assert_ne!(a, b);
        assert_eq!(a, trial_rng(7, 0).next_u64());
    }

    #[test]
    fn complexity_grid_uses_minimal_training() {
        let cfg = ExperimentConfig::default();
        let d = complexity_dims(&cfg, 50, 50);
        assert_eq!((d.t, d.k), (d.m(), 2500));
    }
}
