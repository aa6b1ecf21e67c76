//! Dense complex matrices, structured products, and Hermitian
//! eigen/rank-one solvers.

pub mod eigh;
pub mod flops;
mod mat;
pub mod svd;

pub use mat::{hadamard, khatri_rao, kron, outer, unvec, vec, CMat};
