use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use hdr_core::channel::{ChannelParams, SystemDims};
use hdr_core::pipeline::Method;
use hdr_core::training::make_training;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::SimError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MethodSel {
    #[serde(rename = "HDR")]
    Hdr,
    #[serde(rename = "KRF")]
    Krf,
    #[serde(rename = "LS")]
    Ls,
    /// Perfect channel knowledge.
    #[serde(rename = "Ideal")]
    Ideal,
}

impl MethodSel {
    pub const ALL: [MethodSel; 4] = [MethodSel::Hdr, MethodSel::Krf, MethodSel::Ls, MethodSel::Ideal];

    pub fn estimator(self) -> Option<Method> {
        match self {
            MethodSel::Hdr => Some(Method::Hdr),
            MethodSel::Krf => Some(Method::Krf),
            MethodSel::Ls => Some(Method::Ls),
            MethodSel::Ideal => None,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            MethodSel::Ideal => "Ideal",
            m => m.estimator().expect("estimator").as_str(),
        }
    }
}

impl fmt::Display for MethodSel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MethodSel {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MethodSel::ALL
            .into_iter()
            .find(|m| m.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| SimError::Invalid(format!("unknown method {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DimsConfig {
    pub m_y: usize,
    pub m_z: usize,
    pub q_y: usize,
    pub q_z: usize,
    pub n_y: usize,
    pub n_z: usize,
    pub t: usize,
    pub k: usize,
}

impl From<DimsConfig> for SystemDims {
    fn from(d: DimsConfig) -> Self {
        SystemDims { m_y: d.m_y, m_z: d.m_z, q_y: d.q_y, q_z: d.q_z, n_y: d.n_y, n_z: d.n_z, t: d.t, k: d.k }
    }
}

impl From<SystemDims> for DimsConfig {
    fn from(d: SystemDims) -> Self {
        DimsConfig { m_y: d.m_y, m_z: d.m_z, q_y: d.q_y, q_z: d.q_z, n_y: d.n_y, n_z: d.n_z, t: d.t, k: d.k }
    }
}

/// Fixed angles in degrees, replacing the random draw of every trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AnglesDeg {
    pub phi_bs: f64,
    pub theta_bs: f64,
    pub phi_ris_a: f64,
    pub theta_ris_a: f64,
    pub phi_ris_d: f64,
    pub theta_ris_d: f64,
    pub phi_ue: f64,
    pub theta_ue: f64,
}

impl AnglesDeg {
    pub fn to_params(&self) -> ChannelParams<f64> {
        ChannelParams::from_degrees([
            self.phi_bs,
            self.theta_bs,
            self.phi_ris_a,
            self.theta_ris_a,
            self.phi_ris_d,
            self.theta_ris_d,
            self.phi_ue,
            self.theta_ue,
        ])
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    pub dims: DimsConfig,
    pub snr_grid_db: Vec<f64>,
    pub n_trials: usize,
    pub methods: Vec<MethodSel>,
    pub seed: u64,
    /// Total transmit power; SNR is `p_t / σ²`.
    pub p_t: f64,
    /// RIS sizes `[n_y, n_z]` for the complexity sweep.
    pub n_grid: Vec<[usize; 2]>,
    /// Largest RIS size for which the complexity sweep also runs the
    /// instrumented estimators.
    pub measured_max_n: usize,
    pub angles_deg: Option<AnglesDeg>,
    pub output_path: Option<PathBuf>,
    /// Worker threads; the machine default when absent.
    pub threads: Option<usize>,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            dims: SystemDims::baseline().into(),
            snr_grid_db: vec![-15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0],
            n_trials: 500,
            methods: MethodSel::ALL.to_vec(),
            seed: 1,
            p_t: 1.0,
            n_grid: vec![[4, 4], [10, 10], [20, 20], [50, 50]],
            measured_max_n: 256,
            angles_deg: None,
            output_path: None,
            threads: None,
        }
    }
}

impl ExperimentConfig {
    pub fn from_toml(text: &str) -> Result<Self, SimError> {
        Ok(toml::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self, SimError> {
        let text =
            std::fs::read_to_string(path).map_err(|source| SimError::Read { path: path.to_path_buf(), source })?;
        Self::from_toml(&text)
    }

    pub fn system_dims(&self) -> SystemDims {
        self.dims.into()
    }

    /// Checks every field and that a training design exists for the dims.
    pub fn validate(&self) -> Result<(), SimError> {
        if self.n_trials == 0 {
            return Err(SimError::Invalid("n_trials must be at least 1".into()));
        }
        if self.snr_grid_db.is_empty() {
            return Err(SimError::Invalid("snr_grid_db is empty".into()));
        }
        if let Some(bad) = self.snr_grid_db.iter().find(|s| !s.is_finite()) {
            return Err(SimError::Invalid(format!("non-finite SNR {bad}")));
        }
        if self.methods.is_empty() {
            return Err(SimError::Invalid("no methods selected".into()));
        }
        if !(self.p_t.is_finite() && self.p_t > 0.0) {
            return Err(SimError::Invalid(format!("p_t must be positive, got {}", self.p_t)));
        }
        if self.threads == Some(0) {
            return Err(SimError::Invalid("threads must be at least 1".into()));
        }
        if self.n_grid.iter().any(|g| g[0] == 0 || g[1] == 0) {
            return Err(SimError::Invalid("n_grid entries must be positive".into()));
        }
        let dims = self.system_dims();
        dims.validate()?;
        make_training::<f64>(&dims)?;
        Ok(())
    }

    /// First 16 hex digits of the SHA-256 of the canonical TOML form,
    /// ignoring the output path and thread count.
    pub fn hash(&self) -> String {
        let mut canonical = self.clone();
        canonical.output_path = None;
        canonical.threads = None;
        let text = toml::to_string(&canonical).expect("config serializes");
        let digest = Sha256::digest(text.as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
