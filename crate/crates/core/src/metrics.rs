//! Estimation error and achievable rate.

use num_complex::Complex;

use crate::channel::ChannelRealization;
use crate::error::{Error, Result};
use crate::linalg::svd::{dominant_left_singular_vector, norm, ZERO_NORM};
use crate::linalg::CMat;
use crate::pipeline::EstimateSet;
use crate::scalar::Real;

/// `‖E - Ê‖²_F / ‖E‖²_F` for one trial.
pub fn nmse<T: Real>(e_true: &CMat<T>, e_hat: &CMat<T>) -> Result<T> {
    let denom = e_true.frobenius_norm_sq();
    if denom.to_f64().unwrap_or(0.0).sqrt() < ZERO_NORM {
        return Err(Error::ZeroInput("reference channel for NMSE"));
    }
    Ok(e_hat.sub(e_true)?.frobenius_norm_sq() / denom)
}

/// Effective RIS vector read off an estimate: `n_y ⊗ n_z` for HDR, otherwise
/// the right factor of the dominant rank-one fit of `Ê`.
fn estimated_ris<T: Real>(est: &EstimateSet<T>) -> Result<Vec<Complex<T>>> {
    if let Some(n) = est.effective_ris() {
        return Ok(n);
    }
    let (u, _) = dominant_left_singular_vector(&est.e_hat)?;
    Ok(est.e_hat.adjoint_mul_vec(&u)?.into_iter().map(|z| z.conj()).collect())
}

/// Beamformers designed from an estimate.
#[derive(Debug, Clone)]
pub struct LinkDesign<T> {
    /// Unit-modulus RIS phases.
    pub omega: Vec<Complex<T>>,
    /// UE combiner, unit norm.
    pub combiner: Vec<Complex<T>>,
    /// BS precoder, unit norm.
    pub precoder: Vec<Complex<T>>,
}

/// Aligns the RIS phases with the estimated effective RIS vector, then takes
/// the dominant singular pair of the resulting `Q x M` effective channel.
pub fn design_link<T: Real>(est: &EstimateSet<T>, q: usize, m: usize) -> Result<LinkDesign<T>> {
    let e_hat = &est.e_hat;
    if e_hat.rows() != q * m {
        return Err(Error::DimensionMismatch(format!("estimate has {} rows, expected {}", e_hat.rows(), q * m)));
    }
    let n_hat = estimated_ris(est)?;
    let omega: Vec<Complex<T>> = n_hat
        .iter()
        .map(|z| {
            let r = z.norm();
            if r > T::zero() {
                z.conj().unscale(r)
            } else {
                Complex::new(T::one(), T::zero())
            }
        })
        .collect();
    // Σ_n ω_n unvec_{Q x M}(Ê[:, n])
    let mut h_eff = CMat::zeros(q, m);
    for (n, &w) in omega.iter().enumerate() {
        for (dst, &x) in h_eff.data_mut().iter_mut().zip(e_hat.col(n)) {
            *dst += x * w;
        }
    }
    let (combiner, _) = dominant_left_singular_vector(&h_eff)?;
    let f = h_eff.adjoint_mul_vec(&combiner)?;
    let fnorm = norm(&f);
    let precoder = f.into_iter().map(|z| z.unscale(fnorm)).collect();
    Ok(LinkDesign { omega, combiner, precoder })
}

/// `log2(1 + P_T |w^H G diag(ω) H f|² / σ²)` on the true channel with
/// beamformers designed from the estimate.
pub fn spectral_efficiency<T: Real>(ch: &ChannelRealization<T>, est: &EstimateSet<T>, p_t: T, sigma2: T) -> Result<T> {
    let link = design_link(est, ch.dims.q(), ch.dims.m())?;
    let h_true = ch.effective(&link.omega)?;
    let hf = h_true.mul_vec(&link.precoder)?;
    let gain: Complex<T> = link.combiner.iter().zip(&hf).map(|(w, x)| w.conj() * x).sum();
    Ok((T::one() + p_t * gain.norm_sqr() / sigma2).log2())
}

/// Rate with perfect channel knowledge: `log2(1 + P_T Q M N² / σ²)`.
pub fn ideal_spectral_efficiency(dims: &crate::channel::SystemDims, p_t: f64, sigma2: f64) -> f64 {
    let (q, m, n) = (dims.q() as f64, dims.m() as f64, dims.n() as f64);
    (1.0 + p_t * q * m * n * n / sigma2).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn nmse_cases() {
        let e = CMat::from_fn(4, 3, |i, j| C64::from_polar(1.0, (i * 3 + j) as f64));
        assert_eq!(nmse(&e, &e).unwrap(), 0.0);
        assert!((nmse(&e, &CMat::zeros(4, 3)).unwrap() - 1.0).abs() < 1e-15);
        assert!(nmse(&CMat::<f64>::zeros(4, 3), &e).is_err());
        assert!(nmse(&e, &CMat::zeros(3, 3)).is_err());
    }

    #[test]
    fn nmse_common_phase_invariant() {
        let e = CMat::from_fn(4, 3, |i, j| C64::new(i as f64, j as f64 + 1.0));
        let h = CMat::from_fn(4, 3, |i, j| C64::new(i as f64 + 0.1, j as f64));
        let r = C64::from_polar(1.0, 0.77);
        let a = nmse(&e, &h).unwrap();
        let b = nmse(&e.scale(r), &h.scale(r)).unwrap();
        assert!((a - b).abs() < 1e-14);
    }
}
