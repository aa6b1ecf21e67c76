//! Operation counts: the closed-form models and instrumented measurements.

use rand::Rng;

use crate::channel::{ChannelRealization, SystemDims};
use crate::error::Result;
use crate::linalg::flops::count_macs;
use crate::pipeline::{
    hdr_estimate, krf_estimate, ls_estimate, matched_filter, simulate_observation, EstimateSet, Method, PermutationPlan,
};
use crate::scalar::Real;
use crate::training::TrainingDesign;

/// Leading-order cost with unit constants:
///
/// * LS:  `Q²MNTK`
/// * HDR: `Q²MNTK + QMN(Q_z+Q_y+M_z+M_y+N_z+N_y)`
/// * KRF: `Q²MNTK + N²Q²M²`
pub fn flops_analytic(method: Method, dims: &SystemDims) -> u128 {
    let (q, m, n) = (dims.q() as u128, dims.m() as u128, dims.n() as u128);
    let (t, k) = (dims.t as u128, dims.k as u128);
    let filtering = q * q * m * n * t * k;
    match method {
        Method::Ls => filtering,
        Method::Hdr => {
            let side = (dims.q_z + dims.q_y + dims.m_z + dims.m_y + dims.n_z + dims.n_y) as u128;
            filtering + q * m * n * side
        }
        Method::Krf => filtering + n * n * q * q * m * m,
    }
}

/// Runs matched filtering plus one estimator on `e`-producing observation
/// data and returns the estimate with the complex MACs it took.
pub fn flops_measured<T: Real, R: Rng + ?Sized>(
    method: Method,
    ch: &ChannelRealization<T>,
    td: &TrainingDesign<T>,
    plan: &PermutationPlan,
    sigma2: T,
    rng: &mut R,
) -> Result<(EstimateSet<T>, u64)> {
    let obs = simulate_observation(ch, td, sigma2, rng)?;
    let dims = ch.dims;
    let (est, macs) = count_macs(|| -> Result<EstimateSet<T>> {
        let e = matched_filter(&obs, td)?;
        match method {
            Method::Hdr => hdr_estimate(&e, plan, &dims),
            Method::Krf => krf_estimate(&e, &dims),
            Method::Ls => Ok(ls_estimate(&e)),
        }
    });
    Ok((est?, macs))
}
