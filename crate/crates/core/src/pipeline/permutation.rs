//! Index-map permutations that regroup the filtered channel into the
//! sixth-order rank-one tensor.

use num_complex::Complex;

use crate::channel::SystemDims;
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::scalar::Real;

/// Permutation matrix stored as a gather map: `(P x)[r] = x[src[r]]`, i.e.
/// `P[r, src[r]] = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    src: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self { src: (0..n).collect() }
    }

    pub fn from_gather(src: Vec<usize>) -> Result<Self> {
        let mut seen = vec![false; src.len()];
        for &s in &src {
            if s >= src.len() || std::mem::replace(&mut seen[s], true) {
                return Err(Error::InvalidArgument("gather map is not a bijection".into()));
            }
        }
        Ok(Self { src })
    }

    pub fn len(&self) -> usize {
        self.src.len()
    }

    pub fn is_empty(&self) -> bool {
        self.src.is_empty()
    }

    pub fn gather(&self) -> &[usize] {
        &self.src
    }

    pub fn apply<X: Copy>(&self, x: &[X]) -> Result<Vec<X>> {
        if x.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "permutation of size {} applied to length {}",
                self.len(),
                x.len()
            )));
        }
        Ok(self.src.iter().map(|&s| x[s]).collect())
    }

    /// `P^T = P^{-1}`.
    pub fn inverse(&self) -> Self {
        let mut src = vec![0; self.len()];
        for (r, &s) in self.src.iter().enumerate() {
            src[s] = r;
        }
        Self { src }
    }

    /// Matrix product `self · rhs`.
    pub fn compose(&self, rhs: &Self) -> Result<Self> {
        if self.len() != rhs.len() {
            return Err(Error::DimensionMismatch("composing permutations of different sizes".into()));
        }
        Ok(Self { src: self.src.iter().map(|&s| rhs.src[s]).collect() })
    }

    /// `I_copies ⊗ P`.
    pub fn block_diagonal(&self, copies: usize) -> Self {
        let n = self.len();
        let src = (0..copies).flat_map(|b| self.src.iter().map(move |&s| b * n + s)).collect();
        Self { src }
    }

    pub fn to_dense<T: Real>(&self) -> CMat<T> {
        let mut p = CMat::zeros(self.len(), self.len());
        for (r, &s) in self.src.iter().enumerate() {
            p[(r, s)] = Complex::new(T::one(), T::zero());
        }
        p
    }
}

/// `Σ_{i,j,k,l} (e_l ⊗ e_j ⊗ e_k ⊗ e_i)(e_l ⊗ e_k ⊗ e_j ⊗ e_i)^T` with
/// `e_i ∈ R^I`, `e_j ∈ R^J`, `e_k ∈ R^K`, `e_l ∈ R^L`.
///
/// Swaps the two middle index groups: an input ordered `(l, k, j, i)`,
/// slowest to fastest, comes out ordered `(l, j, k, i)`.
pub fn unit_vector_swap(i: usize, j: usize, k: usize, l: usize) -> Permutation {
    let mut src = Vec::with_capacity(i * j * k * l);
    for ll in 0..l {
        for jj in 0..j {
            for kk in 0..k {
                for ii in 0..i {
                    src.push(((ll * k + kk) * j + jj) * i + ii);
                }
            }
        }
    }
    Permutation { src }
}

/// The two regrouping permutations and their composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationPlan {
    /// `(A⊗B)⋄(C⊗D) = P1 [(A⋄C)⊗(B⋄D)]` for `A: M_y×N_y`, `B: M_z×N_z`,
    /// `C: Q_y×N_y`, `D: Q_z×N_z`.
    pub p1: Permutation,
    /// `vec(A) ⊗ vec(B) = P2 vec(A⊗B)` for `A: Q_yM_y×N_y`, `B: Q_zM_z×N_z`.
    pub p2: Permutation,
    /// `z̄ = P̄ vec(E)`, equal to `P2 (I_N ⊗ P1^T)`.
    pub p_bar: Permutation,
}

pub fn build_permutations(dims: &SystemDims) -> PermutationPlan {
    let d = dims;
    // the unit-vector swap with (Q_z, Q_y, M_z, M_y) maps the Khatri-Rao
    // ordering of E onto the Kronecker ordering, so P1 is its transpose
    let to_kron = unit_vector_swap(d.q_z, d.q_y, d.m_z, d.m_y);
    let p1 = to_kron.inverse();
    let p2 = unit_vector_swap(d.q_z * d.m_z, d.q_y * d.m_y, d.n_z, d.n_y);
    let p_bar = p2.compose(&to_kron.block_diagonal(d.n())).expect("both sides have QMN entries");
    PermutationPlan { p1, p2, p_bar }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_extents() {
        let plan = build_permutations(&SystemDims { m_y: 1, m_z: 1, q_y: 1, q_z: 1, n_y: 1, n_z: 1, t: 1, k: 1 });
        assert_eq!(plan.p1, Permutation::identity(1));
        assert_eq!(plan.p2, Permutation::identity(1));
        assert_eq!(plan.p_bar, Permutation::identity(1));
    }

    #[test]
    fn gather_validation() {
        assert!(Permutation::from_gather(vec![1, 0, 2]).is_ok());
        assert!(Permutation::from_gather(vec![1, 1, 2]).is_err());
        assert!(Permutation::from_gather(vec![0, 3]).is_err());
    }

    #[test]
    fn inverse_and_compose() {
        let p = Permutation::from_gather(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(p.compose(&p.inverse()).unwrap(), Permutation::identity(4));
        let x = [10, 11, 12, 13];
        assert_eq!(p.apply(&x).unwrap(), vec![12, 10, 13, 11]);
        assert_eq!(p.inverse().apply(&p.apply(&x).unwrap()).unwrap(), x.to_vec());
        assert!(p.apply(&x[..3]).is_err());
    }

    #[test]
    fn dense_form_has_one_per_row_and_column() {
        let plan = build_permutations(&SystemDims { m_y: 2, m_z: 3, q_y: 2, q_z: 1, n_y: 2, n_z: 2, t: 6, k: 4 });
        for p in [&plan.p1, &plan.p2, &plan.p_bar] {
            let d = p.to_dense::<f64>();
            for r in 0..d.rows() {
                let row: f64 = (0..d.cols()).map(|c| d[(r, c)].re).sum();
                let col: f64 = (0..d.rows()).map(|c| d[(c, r)].re).sum();
                assert_eq!((row, col), (1.0, 1.0));
            }
        }
    }
}
