//! Cyclic Jacobi eigendecomposition of small Hermitian matrices.

use num_complex::Complex;
use num_traits::Zero;

use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::{abs2, Real};

const MAX_SWEEPS: usize = 64;

/// Eigenpairs of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct HermitianEigen<T> {
    /// Sorted descending. Equal eigenvalues keep their original index order.
    pub values: Vec<T>,
    /// Orthonormal eigenvectors, column `k` pairs with `values[k]`.
    pub vectors: CMat<T>,
}

/// Eigendecomposition `A = V diag(λ) V^H` of a Hermitian matrix.
///
/// Only the Hermitian part of `a` is used. The result is deterministic for a
/// given input: the sweep order is fixed and ties in the eigenvalues are
/// broken by ascending index.
pub fn eigh<T: Real>(a: &CMat<T>) -> Result<HermitianEigen<T>> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!("eigh needs a square matrix, got {:?}", a.shape())));
    }
    let half = T::lit(0.5);
    // symmetrize so round-off asymmetry in the input cannot stall the sweeps
    let mut m = CMat::from_fn(n, n, |i, j| (a[(i, j)] + a[(j, i)].conj()).scale(half));
    for i in 0..n {
        m[(i, i)].im = T::zero();
    }
    let mut v = CMat::identity(n);

    let total: T = m.frobenius_norm_sq();
    let tol = T::epsilon() * T::epsilon() * total;
    for _ in 0..MAX_SWEEPS {
        let mut off = T::zero();
        for q in 0..n {
            for p in 0..q {
                off += abs2(m[(p, q)]);
            }
        }
        if off <= tol || off.is_zero() {
            break;
        }
        for q in 1..n {
            for p in 0..q {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    // stable sort keeps ascending index order among equal eigenvalues
    order.sort_by(|&x, &y| m[(y, y)].re.partial_cmp(&m[(x, x)].re).unwrap_or(std::cmp::Ordering::Equal));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let vectors = CMat::from_fn(n, n, |i, k| v[(i, order[k])]);
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `m[p,q]`, accumulated into `v`.
fn rotate<T: Real>(m: &mut CMat<T>, v: &mut CMat<T>, p: usize, q: usize) {
    let beta = m[(p, q)];
    let mag = beta.norm();
    if mag.is_zero() {
        return;
    }
    let alpha = m[(p, p)].re;
    let gamma = m[(q, q)].re;
    // phase e^{-jφ} makes the 2x2 block real symmetric
    let phase = beta.conj().unscale(mag);
    let theta = (gamma - alpha) / (T::lit(2.0) * mag);
    let t = if theta.is_infinite() {
        T::zero()
    } else {
        let t = T::one() / (theta.abs() + (theta * theta + T::one()).sqrt());
        if theta < T::zero() {
            -t
        } else {
            t
        }
    };
    let c = T::one() / (t * t + T::one()).sqrt();
    let s = t * c;

    // J = [[c, s], [-s e^{-jφ}, c e^{-jφ}]]
    let j00 = Complex::new(c, T::zero());
    let j01 = Complex::new(s, T::zero());
    let j10 = phase.scale(-s);
    let j11 = phase.scale(c);

    let n = m.rows();
    // columns: M <- M J
    for k in 0..n {
        let mp = m[(k, p)];
        let mq = m[(k, q)];
        m[(k, p)] = mp * j00 + mq * j10;
        m[(k, q)] = mp * j01 + mq * j11;
    }
    // rows: M <- J^H M
    for k in 0..n {
        let mp = m[(p, k)];
        let mq = m[(q, k)];
        m[(p, k)] = j00.conj() * mp + j10.conj() * mq;
        m[(q, k)] = j01.conj() * mp + j11.conj() * mq;
    }
    m[(p, q)] = Complex::zero();
    m[(q, p)] = Complex::zero();
    m[(p, p)].im = T::zero();
    m[(q, q)].im = T::zero();

    for k in 0..n {
        let vp = v[(k, p)];
        let vq = v[(k, q)];
        v[(k, p)] = vp * j00 + vq * j10;
        v[(k, q)] = vp * j01 + vq * j11;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;
    use num_traits::One;

    fn is_unit(z: C64) -> bool {
        (z - C64::one()).norm() < 1e-12
    }

    fn hermitian(n: usize, seed: u64) -> CMat<f64> {
        // deterministic LCG fill, enough for unit tests
        let mut s = seed;
        let mut next = move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let b = CMat::from_fn(n, n, |_, _| C64::new(next(), next()));
        b.add(&b.adjoint()).unwrap()
    }

    #[test]
    fn reconstructs_random_hermitian() {
        for n in 1..=7 {
            let a = hermitian(n, n as u64);
            let e = eigh(&a).unwrap();
            let vd = CMat::from_fn(n, n, |i, k| e.vectors[(i, k)].scale(e.values[k]));
            let rebuilt = vd.matmul(&e.vectors.adjoint()).unwrap();
            assert!(rebuilt.max_abs_diff(&a).unwrap() < 1e-12, "n={n}");
            let vhv = e.vectors.adjoint().matmul(&e.vectors).unwrap();
            assert!(vhv.max_abs_diff(&CMat::identity(n)).unwrap() < 1e-12);
            assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        }
    }

    #[test]
    fn ties_keep_index_order() {
        let e = eigh(&CMat::<f64>::identity(3)).unwrap();
        assert_eq!(e.vectors, CMat::identity(3));
        assert_eq!(e.values, vec![1.0; 3]);
    }

    #[test]
    fn rejects_non_square() {
        assert!(eigh(&CMat::<f64>::zeros(2, 3)).is_err());
    }

    #[test]
    fn diag_sorted_descending() {
        let a = CMat::<f64>::diag(&[C64::new(1.0, 0.0), C64::new(3.0, 0.0), C64::new(2.0, 0.0)]);
        let e = eigh(&a).unwrap();
        assert_eq!(e.values, vec![3.0, 2.0, 1.0]);
        assert!(is_unit(e.vectors[(1, 0)]));
    }
}
