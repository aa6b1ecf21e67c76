use num_complex::Complex;

use super::permutation::PermutationPlan;
use super::{EstimateSet, Method};
use crate::channel::SystemDims;
use crate::error::{Error, Result};
use crate::linalg::svd::ZERO_NORM;
use crate::linalg::{unvec, CMat};
use crate::scalar::Real;
use crate::tensor::{hosvd_rank1, hosvd_rank1_par, ComplexTensor, RankOneFactors};

/// The six estimated steering vectors (unit norm) and the core scalar.
///
/// Mode order of the underlying tensor is `(w_z, a_z, n_z, w_y, a_y, n_y)`,
/// with `w` the UE steering vector.
#[derive(Debug, Clone, PartialEq)]
pub struct HdrFactors<T> {
    pub w_z: Vec<Complex<T>>,
    pub a_z: Vec<Complex<T>>,
    pub n_z: Vec<Complex<T>>,
    pub w_y: Vec<Complex<T>>,
    pub a_y: Vec<Complex<T>>,
    pub n_y: Vec<Complex<T>>,
    pub core: Complex<T>,
}

impl<T: Real> HdrFactors<T> {
    fn from_rank_one(f: RankOneFactors<T>) -> Self {
        let mut v = f.vectors.into_iter();
        let mut next = || v.next().expect("six modes");
        Self { w_z: next(), a_z: next(), n_z: next(), w_y: next(), a_y: next(), n_y: next(), core: f.core }
    }

    pub fn to_rank_one(&self) -> RankOneFactors<T> {
        RankOneFactors {
            vectors: vec![
                self.w_z.clone(),
                self.a_z.clone(),
                self.n_z.clone(),
                self.w_y.clone(),
                self.a_y.clone(),
                self.n_y.clone(),
            ],
            core: self.core,
        }
    }

    /// `n_y ⊗ n_z`.
    pub fn effective_ris(&self) -> Vec<Complex<T>> {
        self.n_y.iter().flat_map(|&a| self.n_z.iter().map(move |&b| a * b)).collect()
    }

    /// Rebuilds the `QM x N` Khatri-Rao channel from the factors.
    pub fn reconstruct(&self, plan: &PermutationPlan, dims: &SystemDims) -> Result<CMat<T>> {
        let z = self.to_rank_one().reconstruct()?;
        unshuffle_from_tensor(&z, plan, dims)
    }
}

fn check_shape<T: Real>(e: &CMat<T>, dims: &SystemDims) -> Result<()> {
    if e.shape() != (dims.q() * dims.m(), dims.n()) {
        return Err(Error::DimensionMismatch(format!(
            "expected a {}x{} Khatri-Rao channel, got {:?}",
            dims.q() * dims.m(),
            dims.n(),
            e.shape()
        )));
    }
    Ok(())
}

/// `tens(P̄ vec(E))` with extents `[Q_z, M_z, N_z, Q_y, M_y, N_y]`.
pub fn shuffle_to_tensor<T: Real>(e: &CMat<T>, plan: &PermutationPlan, dims: &SystemDims) -> Result<ComplexTensor<T>> {
    check_shape(e, dims)?;
    let z_bar = plan.p_bar.apply(e.data())?;
    ComplexTensor::tensorize(&z_bar, &dims.hdr_tensor_dims())
}

/// Inverse of [`shuffle_to_tensor`].
pub fn unshuffle_from_tensor<T: Real>(
    z: &ComplexTensor<T>,
    plan: &PermutationPlan,
    dims: &SystemDims,
) -> Result<CMat<T>> {
    if z.dims() != dims.hdr_tensor_dims() {
        return Err(Error::DimensionMismatch(format!(
            "tensor extents {:?} do not match {:?}",
            z.dims(),
            dims.hdr_tensor_dims()
        )));
    }
    let v = plan.p_bar.inverse().apply(z.data())?;
    unvec(&v, dims.q() * dims.m(), dims.n())
}

fn estimate_with<T: Real>(
    e: &CMat<T>,
    plan: &PermutationPlan,
    dims: &SystemDims,
    hosvd: fn(&ComplexTensor<T>) -> Result<RankOneFactors<T>>,
) -> Result<EstimateSet<T>> {
    check_shape(e, dims)?;
    if e.frobenius_norm().to_f64().unwrap_or(0.0) < ZERO_NORM {
        return Err(Error::ZeroInput("Khatri-Rao channel"));
    }
    let z = shuffle_to_tensor(e, plan, dims)?;
    let factors = HdrFactors::from_rank_one(hosvd(&z)?);
    let e_hat = factors.reconstruct(plan, dims)?;
    Ok(EstimateSet { method: Method::Hdr, hdr: Some(factors), krf: None, e_hat })
}

/// HDR estimate: shuffle the filtered channel into a sixth-order tensor and
/// fit it with a rank-one HOSVD.
pub fn hdr_estimate<T: Real>(e: &CMat<T>, plan: &PermutationPlan, dims: &SystemDims) -> Result<EstimateSet<T>> {
    estimate_with(e, plan, dims, hosvd_rank1)
}

/// [`hdr_estimate`] with the six per-mode problems on the rayon pool.
pub fn hdr_estimate_par<T: Real>(e: &CMat<T>, plan: &PermutationPlan, dims: &SystemDims) -> Result<EstimateSet<T>> {
    estimate_with(e, plan, dims, hosvd_rank1_par)
}
