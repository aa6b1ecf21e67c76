//! Tensor-based channel estimation for RIS-assisted MIMO links.
//!
//! The combined BS-RIS-UE channel of a line-of-sight link with uniform
//! rectangular arrays factors into six steering vectors. After matched
//! filtering and two fixed index shuffles, the filtered pilots form a
//! sixth-order rank-one tensor whose factors are recovered by a truncated
//! HOSVD (the HDR estimator). Khatri-Rao factorization (KRF) and plain least
//! squares (LS) baselines are included for comparison.
//!
//! The numerics are generic over the real scalar type ([`Real`], implemented
//! for `f32` and `f64`); the aliases below fix it to `f64`.

pub mod channel;
pub mod complexity;
pub mod error;
pub mod linalg;
pub mod metrics;
pub mod pipeline;
pub mod scalar;
pub mod tensor;
pub mod training;

pub use error::{Error, Result};
pub use scalar::Real;

pub use num_complex::Complex;

pub type C64 = Complex<f64>;
pub type C32 = Complex<f32>;

pub type Matrix = linalg::CMat<f64>;
pub type Tensor = tensor::ComplexTensor<f64>;
pub type Factors = tensor::RankOneFactors<f64>;

pub type Matrix32 = linalg::CMat<f32>;
pub type Tensor32 = tensor::ComplexTensor<f32>;

pub type Dims = channel::SystemDims;
pub type Params = channel::ChannelParams<f64>;
pub type Channel = channel::ChannelRealization<f64>;
pub type Training = training::TrainingDesign<f64>;
pub type Observation = pipeline::ObservationTensor<f64>;
pub type Estimate = pipeline::EstimateSet<f64>;
