use num_complex::Complex;

use super::{EstimateSet, Method};
use crate::channel::SystemDims;
use crate::error::{Error, Result};
use crate::linalg::svd::dominant_left_singular_vector;
use crate::linalg::{flops, CMat};
use crate::scalar::Real;

/// Per-column Kronecker factors: column `n` of the estimate is
/// `h[:,n] ⊗ g[:,n]`, with `g[:,n]` unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct KrfFactors<T> {
    /// `M x N`.
    pub h: CMat<T>,
    /// `Q x N`.
    pub g: CMat<T>,
}

/// Least-squares Khatri-Rao factorization.
///
/// Each column `e_n = h_n ⊗ g_n` is rearranged into the `Q x M` matrix
/// `g_n h_n^T` and replaced by its best rank-one approximation.
pub fn krf_estimate<T: Real>(e: &CMat<T>, dims: &SystemDims) -> Result<EstimateSet<T>> {
    let (q, m, n) = (dims.q(), dims.m(), dims.n());
    if e.shape() != (q * m, n) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{n} Khatri-Rao channel, got {:?}",
            q * m,
            e.shape()
        )));
    }
    let mut h = CMat::zeros(m, n);
    let mut g = CMat::zeros(q, n);
    let mut e_hat = CMat::zeros(q * m, n);
    for col in 0..n {
        let block = CMat::from_col_major(q, m, e.col(col).to_vec())?;
        let (u, _) =
            dominant_left_singular_vector(&block).map_err(|_| Error::ZeroInput("Khatri-Rao channel column"))?;
        // h_n = (E_n^H u)^*
        let h_n: Vec<Complex<T>> = block.adjoint_mul_vec(&u)?.into_iter().map(|z| z.conj()).collect();
        let dst = e_hat.col_mut(col);
        for (mi, &hm) in h_n.iter().enumerate() {
            for (qi, &gq) in u.iter().enumerate() {
                dst[mi * q + qi] = hm * gq;
            }
        }
        flops::record(q * m);
        h.col_mut(col).copy_from_slice(&h_n);
        g.col_mut(col).copy_from_slice(&u);
    }
    Ok(EstimateSet { method: Method::Krf, hdr: None, krf: Some(KrfFactors { h, g }), e_hat })
}

/// Unstructured estimate: the matched-filter output itself.
pub fn ls_estimate<T: Real>(e: &CMat<T>) -> EstimateSet<T> {
    EstimateSet { method: Method::Ls, hdr: None, krf: None, e_hat: e.clone() }
}
