use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{cis, Real};

const GRID_OVERSAMPLING: usize = 64;
const NEWTON_STEPS: usize = 3;

/// `(c, c', c'')` of `c(μ) = v^H steering_1d(L, μ)`.
fn correlation<T: Real>(v: &[Complex<T>], mu: T) -> (Complex<T>, Complex<T>, Complex<T>) {
    let mut c = Complex::new(T::zero(), T::zero());
    let mut d1 = c;
    let mut d2 = c;
    for (l, z) in v.iter().enumerate() {
        let lf = T::from_usize_lossy(l);
        let term = z.conj() * cis(-lf * mu);
        c += term;
        d1 += term * Complex::new(T::zero(), -lf);
        d2 += term.scale(-lf * lf);
    }
    (c, d1, d2)
}

fn wrap<T: Real>(mu: T) -> T {
    let two_pi = T::lit(2.0) * T::PI();
    let mut m = (mu + T::PI()) % two_pi;
    if m < T::zero() {
        m += two_pi;
    }
    m - T::PI()
}

/// Spatial frequency of a (noisy) 1-D steering vector.
///
/// Maximizes `|v^H steering_1d(L, μ)|²` over a uniform grid on `[-π, π)`
/// and refines the peak with three Newton steps. The result does not depend
/// on the phase or scale of `v` and is wrapped into `[-π, π)`.
pub fn extract_spatial_frequency<T: Real>(v: &[Complex<T>]) -> Result<T> {
    if v.len() < 2 {
        return Err(Error::InvalidArgument("frequency extraction needs at least two entries".into()));
    }
    let grid = GRID_OVERSAMPLING * v.len();
    let step = T::lit(2.0) * T::PI() / T::from_usize_lossy(grid);
    let mut best = (T::neg_infinity(), T::zero());
    for g in 0..grid {
        let mu = -T::PI() + step * T::from_usize_lossy(g);
        let p = correlation(v, mu).0.norm_sqr();
        if p > best.0 {
            best = (p, mu);
        }
    }
    let mut mu = best.1;
    for _ in 0..NEWTON_STEPS {
        let (c, d1, d2) = correlation(v, mu);
        let grad = (c.conj() * d1).re;
        let curv = d1.norm_sqr() + (c.conj() * d2).re;
        if curv.is_nan() || curv >= T::zero() {
            break;
        }
        let delta = grad / curv;
        // stay within the grid cell the search settled on
        if delta.abs() > step {
            break;
        }
        mu -= delta;
    }
    Ok(wrap(mu))
}
