//! Pilot and RIS phase-shift design with a row-orthonormal joint matrix.

use crate::channel::SystemDims;
use crate::error::{Error, Result};
use crate::linalg::{kron, CMat};
use crate::scalar::{cis, Real};

/// Residual below which a design counts as valid.
pub const DESIGN_TOL: f64 = 1e-10;
/// Largest orthonormality residual the matched filter accepts.
pub const FILTER_TOL: f64 = 1e-8;

/// Pilots `S`, RIS phases `Ω` and the joint matrix `Ψ = Ω ⊗ S`.
///
/// The orthonormality residual `max |ΨΨ^H - I|` is computed once at
/// construction and carried along as a certificate.
#[derive(Debug, Clone)]
pub struct TrainingDesign<T> {
    s: CMat<T>,
    omega: CMat<T>,
    psi: CMat<T>,
    orthonormality_residual: f64,
}

/// First `rows` rows of the `size`-point DFT matrix, scaled by `1/sqrt(size)`.
fn truncated_dft<T: Real>(rows: usize, size: usize) -> CMat<T> {
    let scale = T::one() / T::from_usize_lossy(size).sqrt();
    let two_pi = T::lit(2.0) * T::PI();
    CMat::from_fn(rows, size, |r, c| {
        // reduce r*c mod size first so large products keep full precision
        let rc = (r * c) % size;
        cis(-two_pi * T::from_usize_lossy(rc) / T::from_usize_lossy(size)).scale(scale)
    })
}

fn row_gram_residual<T: Real>(psi: &CMat<T>) -> f64 {
    let g = psi.gram_rows();
    g.max_abs_diff(&CMat::identity(g.rows())).expect("gram is square").to_f64().unwrap_or(f64::INFINITY)
}

/// Builds the DFT-based design for `dims`.
///
/// `S` holds the first `M` rows of the `T`-point DFT and `Ω` the first `N`
/// rows of the `K`-point DFT, each scaled to orthonormal rows, so every entry
/// of `Ψ` has modulus `1/sqrt(TK)` and `ΨΨ^H = I_{MN}`. Because
/// `ΨΨ^H = ΩΩ^H ⊗ SS^H`, the Kronecker structure needs `T >= M` and `K >= N`
/// on top of `TK >= MN`.
pub fn make_training<T: Real>(dims: &SystemDims) -> Result<TrainingDesign<T>> {
    let (m, n) = (dims.m(), dims.n());
    if dims.t * dims.k < m * n {
        return Err(Error::InfeasibleDesign(format!(
            "requires TK >= MN, got TK = {} < MN = {}",
            dims.t * dims.k,
            m * n
        )));
    }
    if dims.t < m || dims.k < n {
        return Err(Error::InfeasibleDesign(format!(
            "a Kronecker-structured design needs T >= M and K >= N, got T = {}, M = {m}, K = {}, N = {n}",
            dims.t, dims.k
        )));
    }
    let s = truncated_dft(m, dims.t);
    let omega = truncated_dft(n, dims.k);
    Ok(TrainingDesign::from_parts(s, omega))
}

impl<T: Real> TrainingDesign<T> {
    /// Design with `Ψ = Ω ⊗ S`.
    pub fn from_parts(s: CMat<T>, omega: CMat<T>) -> Self {
        let psi = kron(&omega, &s);
        Self::with_joint_matrix(s, omega, psi)
    }

    /// Design with an explicit joint matrix, which need not equal `Ω ⊗ S`.
    pub fn with_joint_matrix(s: CMat<T>, omega: CMat<T>, psi: CMat<T>) -> Self {
        let orthonormality_residual = row_gram_residual(&psi);
        Self { s, omega, psi, orthonormality_residual }
    }

    /// Pilot matrix, `M x T`.
    pub fn s(&self) -> &CMat<T> {
        &self.s
    }

    /// RIS phase matrix, `N x K`; column `k` drives block `k`.
    pub fn omega(&self) -> &CMat<T> {
        &self.omega
    }

    /// Joint matrix, `MN x TK`.
    pub fn psi(&self) -> &CMat<T> {
        &self.psi
    }

    /// `max |ΨΨ^H - I|`.
    pub fn orthonormality_residual(&self) -> f64 {
        self.orthonormality_residual
    }

    pub fn validate(&self) -> ValidationReport {
        let moduli: Vec<f64> = self.omega.data().iter().map(|z| z.norm().to_f64().unwrap_or(f64::NAN)).collect();
        let max = moduli.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let min = moduli.iter().copied().fold(f64::INFINITY, f64::min);
        let expected = kron(&self.omega, &self.s);
        let kronecker_residual = if expected.shape() == self.psi.shape() {
            expected.max_abs_diff(&self.psi).expect("same shape").to_f64().unwrap_or(f64::INFINITY)
        } else {
            f64::INFINITY
        };
        ValidationReport {
            row_gram_deviation: self.orthonormality_residual,
            omega_modulus_spread: max - min,
            kronecker_residual,
        }
    }
}

/// Residuals of a training design; all are zero for an exact design.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ValidationReport {
    /// `max |ΨΨ^H - I|`.
    pub row_gram_deviation: f64,
    /// Largest minus smallest modulus over the entries of `Ω`.
    pub omega_modulus_spread: f64,
    /// `max |Ψ - Ω ⊗ S|`.
    pub kronecker_residual: f64,
}

impl ValidationReport {
    pub fn is_valid(&self, tol: f64) -> bool {
        self.row_gram_deviation < tol && self.omega_modulus_spread < tol && self.kronecker_residual < tol
    }
}

/// Entry modulus every element of `Ψ` should have.
pub fn expected_entry_modulus(dims: &SystemDims) -> f64 {
    1.0 / ((dims.t * dims.k) as f64).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    fn dims(m: (usize, usize), n: (usize, usize), t: usize, k: usize) -> SystemDims {
        SystemDims { m_y: m.0, m_z: m.1, q_y: 1, q_z: 1, n_y: n.0, n_z: n.1, t, k }
    }

    #[test]
    fn scalar_design() {
        let td = make_training::<f64>(&dims((1, 1), (1, 1), 1, 1)).unwrap();
        assert_eq!(td.psi().shape(), (1, 1));
        assert!((td.psi()[(0, 0)] - C64::new(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn baseline_operating_point_is_orthonormal() {
        let td = make_training::<f64>(&SystemDims::baseline()).unwrap();
        assert_eq!(td.psi().shape(), (256, 256));
        assert!(td.orthonormality_residual() < 1e-10);
        let r = td.validate();
        assert!(r.is_valid(DESIGN_TOL), "{r:?}");
        let modulus = expected_entry_modulus(&SystemDims::baseline());
        assert!(td.psi().data().iter().all(|z| (z.norm() - modulus).abs() < 1e-14));
    }

    #[test]
    fn infeasible_designs() {
        let err = make_training::<f64>(&dims((2, 2), (2, 2), 2, 4)).unwrap_err();
        assert!(matches!(err, Error::InfeasibleDesign(ref msg) if msg.contains("TK >= MN")));
        // TK >= MN but T < M
        let err = make_training::<f64>(&dims((2, 2), (2, 2), 2, 32)).unwrap_err();
        assert!(matches!(err, Error::InfeasibleDesign(ref msg) if msg.contains("T >= M")));
    }

    #[test]
    fn wide_designs() {
        // T > M and K > N still give orthonormal rows
        let td = make_training::<f64>(&dims((2, 1), (3, 1), 5, 7)).unwrap();
        assert!(td.validate().is_valid(DESIGN_TOL));
    }

    #[test]
    fn deterministic() {
        let a = make_training::<f64>(&SystemDims::baseline()).unwrap();
        let b = make_training::<f64>(&SystemDims::baseline()).unwrap();
        assert_eq!(a.psi(), b.psi());
        assert_eq!(a.s(), b.s());
        assert_eq!(a.omega(), b.omega());
    }

    #[test]
    fn perturbed_entry_breaks_kronecker_consistency() {
        let td = make_training::<f64>(&dims((2, 1), (2, 1), 2, 2)).unwrap();
        let mut psi = td.psi().clone();
        psi[(1, 2)] += C64::new(1e-3, 0.0);
        let bad = TrainingDesign::with_joint_matrix(td.s().clone(), td.omega().clone(), psi);
        let r = bad.validate();
        assert!(r.kronecker_residual > 0.0);
        assert!(!r.is_valid(DESIGN_TOL));
    }
}
