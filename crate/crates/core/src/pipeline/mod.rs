//! Receiver processing: observation synthesis, matched filtering, and the
//! HDR, KRF and LS estimators.

mod baselines;
mod frequency;
mod hdr;
mod observation;
mod permutation;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;

use crate::error::Error;
use crate::linalg::CMat;

pub use baselines::{krf_estimate, ls_estimate, KrfFactors};
pub use frequency::extract_spatial_frequency;
pub use hdr::{hdr_estimate, hdr_estimate_par, shuffle_to_tensor, unshuffle_from_tensor, HdrFactors};
pub use observation::{complex_gaussian, matched_filter, simulate_observation, ObservationTensor};
pub use permutation::{build_permutations, unit_vector_swap, Permutation, PermutationPlan};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Hdr,
    Krf,
    Ls,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Hdr, Method::Krf, Method::Ls];

    pub fn as_str(self) -> &'static str {
        match self {
            Method::Hdr => "HDR",
            Method::Krf => "KRF",
            Method::Ls => "LS",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s.to_ascii_uppercase().as_str() {
            "HDR" => Ok(Method::Hdr),
            "KRF" => Ok(Method::Krf),
            "LS" => Ok(Method::Ls),
            other => Err(Error::InvalidArgument(format!("unknown method {other:?}"))),
        }
    }
}

/// Output of one estimator.
#[derive(Debug, Clone)]
pub struct EstimateSet<T> {
    pub method: Method,
    /// Present for HDR only.
    pub hdr: Option<HdrFactors<T>>,
    /// Present for KRF only.
    pub krf: Option<KrfFactors<T>>,
    /// Reconstructed Khatri-Rao channel, `QM x N`.
    pub e_hat: CMat<T>,
}

impl<T: crate::Real> EstimateSet<T> {
    /// Effective RIS vector estimate when the method provides one directly.
    pub fn effective_ris(&self) -> Option<Vec<Complex<T>>> {
        self.hdr.as_ref().map(HdrFactors::effective_ris)
    }
}
