use num_complex::Complex;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::Real;
use crate::tensor::ComplexTensor;
use crate::training::{TrainingDesign, FILTER_TOL};

/// Received pilot blocks stacked as a `Q x T x K` tensor.
#[derive(Debug, Clone)]
pub struct ObservationTensor<T> {
    pub x: ComplexTensor<T>,
    pub sigma2: T,
    /// Seed of the stream the noise was drawn from, when the caller tracks one.
    pub seed: Option<u64>,
}

impl<T: Real> ObservationTensor<T> {
    pub fn new(x: ComplexTensor<T>, sigma2: T) -> Result<Self> {
        if x.order() != 3 {
            return Err(Error::DimensionMismatch(format!("observation must be Q x T x K, got extents {:?}", x.dims())));
        }
        Ok(Self { x, sigma2, seed: None })
    }
}

/// Circularly-symmetric complex Gaussian sample with variance `sigma2`.
pub fn complex_gaussian<T: Real, R: Rng + ?Sized>(rng: &mut R, sigma2: T) -> Complex<T> {
    let s = (sigma2 / T::lit(2.0)).sqrt();
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex::new(T::lit(re) * s, T::lit(im) * s)
}

/// `X_k = G diag(ω_k) H S + V_k` for every block `k`, with i.i.d.
/// circular Gaussian noise of per-entry variance `sigma2`.
///
/// Noise is drawn block by block in column-major order, real part first, so
/// a given stream always yields the same normalized noise.
pub fn simulate_observation<T: Real, R: Rng + ?Sized>(
    ch: &ChannelRealization<T>,
    td: &TrainingDesign<T>,
    sigma2: T,
    rng: &mut R,
) -> Result<ObservationTensor<T>> {
    let d = ch.dims;
    let (s, omega) = (td.s(), td.omega());
    if s.rows() != d.m() || omega.rows() != d.n() || ch.g.rows() != d.q() {
        return Err(Error::DimensionMismatch(format!(
            "training design S {:?}, Ω {:?} does not fit M = {}, N = {}",
            s.shape(),
            omega.shape(),
            d.m(),
            d.n()
        )));
    }
    let (q, t, k) = (d.q(), s.cols(), omega.cols());
    let hs = ch.h.matmul(s)?;
    let mut data = Vec::with_capacity(q * t * k);
    for blk in 0..k {
        let w = omega.col(blk);
        let gw = CMat::from_fn(q, d.n(), |i, j| ch.g[(i, j)] * w[j]);
        let xk = gw.matmul(&hs)?;
        data.extend(xk.into_data());
    }
    if sigma2 > T::zero() {
        for z in &mut data {
            *z += complex_gaussian(rng, sigma2);
        }
    }
    ObservationTensor::new(ComplexTensor::new(vec![q, t, k], data)?, sigma2)
}

/// Right-filters the mode-0 unfolding with `Ψ^H` and reshapes the `Q x MN`
/// result to the `QM x N` Khatri-Rao channel estimate.
pub fn matched_filter<T: Real>(obs: &ObservationTensor<T>, td: &TrainingDesign<T>) -> Result<CMat<T>> {
    let residual = td.orthonormality_residual();
    if residual.is_nan() || residual > FILTER_TOL {
        return Err(Error::NotOrthonormal(residual));
    }
    let psi = td.psi();
    let (m, n) = (td.s().rows(), td.omega().rows());
    let dims = obs.x.dims();
    if dims[1] * dims[2] != psi.cols() || dims[1] != td.s().cols() {
        return Err(Error::DimensionMismatch(format!("observation {:?} does not match Ψ {:?}", dims, psi.shape())));
    }
    let q = dims[0];
    let filtered = obs.x.unfold(0)?.matmul(&psi.adjoint())?;
    CMat::from_col_major(q * m, n, filtered.into_data())
}
