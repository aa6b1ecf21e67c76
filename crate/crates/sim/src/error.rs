use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum SimError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error("cannot write output: {0}")]
    Write(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("invalid config: {0}")]
    Parse(#[from] toml::de::Error),
    #[error("invalid config: {0}")]
    Invalid(String),
    #[error("infeasible config: {0}")]
    Infeasible(#[from] hdr_core::Error),
    #[error("thread pool: {0}")]
    Pool(#[from] rayon::ThreadPoolBuildError),
}

impl SimError {
    /// 2 for configurations that cannot run, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            SimError::Parse(_) | SimError::Invalid(_) | SimError::Infeasible(_) => 2,
            _ => 1,
        }
    }
}
