//! Dominant singular triplet through the smaller Gram matrix.

use num_complex::Complex;

use super::eigh::eigh;
use super::CMat;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// Norms below this are treated as exactly zero.
pub const ZERO_NORM: f64 = 1e-300;

/// Entries within this relative distance of the largest modulus count as
/// tied for the phase reference; the first of them wins.
const PHASE_REF_TOL: f64 = 1e-9;

/// Unit-norm dominant left singular vector and its singular value.
///
/// Works on `M M^H` when `M` is short-fat and on `M^H M` otherwise. The
/// returned vector is normalized so that its reference entry (the first entry
/// whose modulus is maximal up to round-off) is real and positive.
pub fn dominant_left_singular_vector<T: Real>(m: &CMat<T>) -> Result<(Vec<Complex<T>>, T)> {
    if m.rows() == 0 || m.cols() == 0 || m.frobenius_norm().to_f64().unwrap_or(0.0) < ZERO_NORM {
        return Err(Error::ZeroInput("matrix for rank-one approximation"));
    }
    let (mut u, sigma) = if m.rows() <= m.cols() {
        let e = eigh(&m.gram_rows())?;
        let sigma = e.values[0].max(T::zero()).sqrt();
        (e.vectors.col(0).to_vec(), sigma)
    } else {
        let e = eigh(&m.gram_cols())?;
        let mv = m.mul_vec(e.vectors.col(0))?;
        let sigma = norm(&mv);
        if sigma.is_zero() {
            return Err(Error::ZeroInput("matrix for rank-one approximation"));
        }
        (mv.into_iter().map(|z| z.unscale(sigma)).collect(), sigma)
    };
    let n = norm(&u);
    for z in &mut u {
        *z = z.unscale(n);
    }
    fix_phase(&mut u);
    Ok((u, sigma))
}

/// Rotates `v` by a unit-modulus scalar so that its reference entry is real
/// and positive.
pub fn fix_phase<T: Real>(v: &mut [Complex<T>]) {
    let max = v.iter().map(|z| z.norm()).fold(T::zero(), T::max);
    if max.is_zero() {
        return;
    }
    let floor = max * (T::one() - T::lit(PHASE_REF_TOL));
    let Some(r) = v.iter().find(|z| z.norm() >= floor).copied() else {
        return;
    };
    let rot = r.conj().unscale(r.norm());
    for z in v.iter_mut() {
        *z *= rot;
    }
}

pub fn norm<T: Real>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).sum::<T>().sqrt()
}

/// `a^H b`.
pub fn dot<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Complex<T> {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::C64;

    #[test]
    fn diagonal_picks_largest() {
        let m = CMat::<f64>::diag(&[C64::new(3.0, 0.0), C64::new(1.0, 0.0)]);
        let (u, s) = dominant_left_singular_vector(&m).unwrap();
        assert!((s - 3.0).abs() < 1e-14);
        assert!((u[0] - C64::new(1.0, 0.0)).norm() < 1e-14);
        assert!(u[1].norm() < 1e-14);
    }

    #[test]
    fn rank_one_is_collinear() {
        let a = [C64::new(1.0, 2.0), C64::new(-0.5, 0.1), C64::new(0.0, 3.0)];
        let b = [C64::new(0.2, -1.0), C64::new(1.0, 1.0)];
        let bc: Vec<_> = b.iter().map(|z| z.conj()).collect();
        for m in [super::super::outer(&a, &bc), super::super::outer(&a, &bc).transpose().transpose()] {
            let (u, s) = dominant_left_singular_vector(&m).unwrap();
            let align = dot(&u, &a).norm() / norm(&a);
            assert!((align - 1.0).abs() < 1e-12);
            assert!((s - norm(&a) * norm(&b)).abs() < 1e-12);
        }
    }

    #[test]
    fn tall_matrix_path() {
        let a = [C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(2.0, 0.0)];
        let b = [C64::new(1.0, 0.0)];
        let m = super::super::outer(&a, &b);
        let (u, s) = dominant_left_singular_vector(&m).unwrap();
        assert_eq!(u.len(), 3);
        assert!((s - norm(&a)).abs() < 1e-12);
        // reference entry is the largest one, made real positive
        assert!(u[2].im.abs() < 1e-15 && u[2].re > 0.0);
    }

    #[test]
    fn zero_matrix_is_an_error() {
        let m = CMat::<f64>::zeros(3, 2);
        assert_eq!(dominant_left_singular_vector(&m), Err(Error::ZeroInput("matrix for rank-one approximation")));
    }

    #[test]
    fn phase_reference_is_first_of_equal_moduli() {
        let mut v = vec![C64::from_polar(0.5, 1.0), C64::from_polar(0.5, -2.0)];
        fix_phase(&mut v);
        assert!((v[0] - C64::new(0.5, 0.0)).norm() < 1e-15);
    }
}
