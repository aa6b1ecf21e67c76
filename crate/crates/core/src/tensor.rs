//! Dense complex multiway arrays and their rank-one HOSVD.
//!
//! Storage is column-major: the first index varies fastest. The mode-`n`
//! unfolding puts mode `n` on the rows and orders the remaining modes
//! ascending on the columns, earlier modes varying faster. Modes are
//! zero-based throughout.

use num_complex::Complex;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::svd::{dominant_left_singular_vector, norm, ZERO_NORM};
use crate::linalg::{flops, CMat};
use crate::scalar::{abs2, Real};

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexTensor<T> {
    dims: Vec<usize>,
    data: Vec<Complex<T>>,
}

impl<T: Real> ComplexTensor<T> {
    pub fn new(dims: Vec<usize>, data: Vec<Complex<T>>) -> Result<Self> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidArgument(format!("tensor extents must be positive, got {dims:?}")));
        }
        let n: usize = dims.iter().product();
        if n != data.len() {
            return Err(Error::DimensionMismatch(format!("{} elements for extents {dims:?}", data.len())));
        }
        Ok(Self { dims, data })
    }

    pub fn zeros(dims: Vec<usize>) -> Result<Self> {
        let n = dims.iter().product();
        Self::new(dims, vec![Complex::zero(); n])
    }

    /// Builds a tensor from a function of the multi-index.
    pub fn from_fn(dims: Vec<usize>, mut f: impl FnMut(&[usize]) -> Complex<T>) -> Result<Self> {
        let n: usize = dims.iter().product();
        let mut idx = vec![0; dims.len()];
        let mut data = Vec::with_capacity(n);
        for _ in 0..n {
            data.push(f(&idx));
            for (k, d) in idx.iter_mut().zip(&dims) {
                *k += 1;
                if *k < *d {
                    break;
                }
                *k = 0;
            }
        }
        Self::new(dims, data)
    }

    /// Outer product `v_1 ∘ v_2 ∘ … ∘ v_N`.
    pub fn outer(vectors: &[&[Complex<T>]]) -> Result<Self> {
        let mut data = vec![Complex::<T>::one()];
        for v in vectors {
            let mut next = Vec::with_capacity(data.len() * v.len());
            for &x in v.iter() {
                next.extend(data.iter().map(|&d| d * x));
            }
            data = next;
        }
        flops::record(data.len());
        Self::new(vectors.iter().map(|v| v.len()).collect(), data)
    }

    /// Reinterprets a column-major vector as a tensor with the given extents.
    pub fn tensorize(v: &[Complex<T>], dims: &[usize]) -> Result<Self> {
        Self::new(dims.to_vec(), v.to_vec())
    }

    #[inline]
    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.dims.len()
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    /// Column-major vectorization.
    pub fn vec(&self) -> Vec<Complex<T>> {
        self.data.clone()
    }

    pub fn get(&self, idx: &[usize]) -> Complex<T> {
        debug_assert_eq!(idx.len(), self.order());
        let mut lin = 0;
        for (k, (&i, &d)) in idx.iter().zip(&self.dims).enumerate().rev() {
            debug_assert!(i < d, "index {i} out of range in mode {k}");
            lin = lin * d + i;
        }
        self.data[lin]
    }

    pub fn reshape(&self, dims: &[usize]) -> Result<Self> {
        Self::new(dims.to_vec(), self.data.clone())
    }

    pub fn frobenius_norm(&self) -> T {
        self.data.iter().map(|&z| abs2(z)).sum::<T>().sqrt()
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { dims: self.dims.clone(), data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        if self.dims != other.dims {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.dims, other.dims)));
        }
        Ok(Self { dims: self.dims.clone(), data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect() })
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        Ok(self.sub(other)?.data.iter().map(|z| z.norm()).fold(T::zero(), T::max))
    }

    fn check_mode(&self, mode: usize) -> Result<()> {
        if mode >= self.order() {
            return Err(Error::ModeOutOfRange { mode, order: self.order() });
        }
        Ok(())
    }

    /// Products of the extents before and after `mode`.
    fn split(dims: &[usize], mode: usize) -> (usize, usize) {
        let left = dims[..mode].iter().product();
        let right = dims[mode + 1..].iter().product();
        (left, right)
    }

    /// Mode-`mode` unfolding: `dims[mode] x (product of the other extents)`.
    pub fn unfold(&self, mode: usize) -> Result<CMat<T>> {
        self.check_mode(mode)?;
        let rows = self.dims[mode];
        let (left, right) = Self::split(&self.dims, mode);
        let mut out = CMat::zeros(rows, left * right);
        for r in 0..right {
            for i in 0..rows {
                let src = &self.data[left * (i + rows * r)..left * (i + rows * r + 1)];
                for (l, &x) in src.iter().enumerate() {
                    out[(i, l + left * r)] = x;
                }
            }
        }
        Ok(out)
    }

    /// Inverse of [`unfold`](Self::unfold) for a tensor of extents `dims`.
    pub fn fold(m: &CMat<T>, mode: usize, dims: &[usize]) -> Result<Self> {
        if mode >= dims.len() {
            return Err(Error::ModeOutOfRange { mode, order: dims.len() });
        }
        let (left, right) = Self::split(dims, mode);
        if m.rows() != dims[mode] || m.cols() != left * right {
            return Err(Error::DimensionMismatch(format!(
                "cannot fold {:?} into extents {dims:?} along mode {mode}",
                m.shape()
            )));
        }
        let rows = dims[mode];
        let mut data = vec![Complex::zero(); rows * left * right];
        for r in 0..right {
            for i in 0..rows {
                for l in 0..left {
                    data[l + left * (i + rows * r)] = m[(i, l + left * r)];
                }
            }
        }
        Self::new(dims.to_vec(), data)
    }

    /// `X ×_mode A`: the mode-`mode` unfolding of the result is `A · X_(mode)`.
    pub fn n_mode_product(&self, a: &CMat<T>, mode: usize) -> Result<Self> {
        self.check_mode(mode)?;
        if a.cols() != self.dims[mode] {
            return Err(Error::DimensionMismatch(format!(
                "mode-{mode} product needs {} columns, matrix is {:?}",
                self.dims[mode],
                a.shape()
            )));
        }
        let y = a.matmul(&self.unfold(mode)?)?;
        let mut dims = self.dims.clone();
        dims[mode] = a.rows();
        Self::fold(&y, mode, &dims)
    }

    /// `X ×_1 v_1^H ×_2 … ×_N v_N^H` as a scalar.
    pub fn contract_all(&self, vectors: &[Vec<Complex<T>>]) -> Result<Complex<T>> {
        if vectors.len() != self.order() || vectors.iter().zip(&self.dims).any(|(v, &d)| v.len() != d) {
            return Err(Error::DimensionMismatch("one vector per mode with matching length".into()));
        }
        let mut cur = self.data.clone();
        for (v, &d) in vectors.iter().zip(&self.dims) {
            flops::record(cur.len());
            cur = cur.chunks_exact(d).map(|chunk| chunk.iter().zip(v).map(|(&x, y)| y.conj() * x).sum()).collect();
        }
        Ok(cur[0])
    }
}

/// Unit-norm factor vectors with a complex amplitude.
#[derive(Debug, Clone, PartialEq)]
pub struct RankOneFactors<T> {
    pub vectors: Vec<Vec<Complex<T>>>,
    pub core: Complex<T>,
}

impl<T: Real> RankOneFactors<T> {
    /// `core · (v_1 ∘ … ∘ v_N)`.
    pub fn reconstruct(&self) -> Result<ComplexTensor<T>> {
        let refs: Vec<&[Complex<T>]> = self.vectors.iter().map(Vec::as_slice).collect();
        Ok(ComplexTensor::outer(&refs)?.scale(self.core))
    }
}

fn check_hosvd_input<T: Real>(z: &ComplexTensor<T>) -> Result<()> {
    if z.order() < 2 {
        return Err(Error::InvalidArgument("rank-one HOSVD needs order >= 2".into()));
    }
    if z.frobenius_norm().to_f64().unwrap_or(0.0) < ZERO_NORM {
        return Err(Error::ZeroInput("tensor for rank-one HOSVD"));
    }
    Ok(())
}

fn mode_factor<T: Real>(z: &ComplexTensor<T>, mode: usize) -> Result<Vec<Complex<T>>> {
    dominant_left_singular_vector(&z.unfold(mode)?).map(|(u, _)| u)
}

fn finish<T: Real>(z: &ComplexTensor<T>, vectors: Vec<Vec<Complex<T>>>) -> Result<RankOneFactors<T>> {
    debug_assert!(vectors.iter().all(|v| (norm(v) - T::one()).abs() < T::lit(1e-6)));
    let core = z.contract_all(&vectors)?;
    Ok(RankOneFactors { vectors, core })
}

/// Truncated rank-one HOSVD: the dominant left singular vector of every
/// unfolding, with the core scalar obtained by projecting `z` onto them.
pub fn hosvd_rank1<T: Real>(z: &ComplexTensor<T>) -> Result<RankOneFactors<T>> {
    check_hosvd_input(z)?;
    let vectors = (0..z.order()).map(|n| mode_factor(z, n)).collect::<Result<Vec<_>>>()?;
    finish(z, vectors)
}

/// Same as [`hosvd_rank1`], solving the per-mode problems on the rayon pool.
/// The output is identical to the sequential version.
pub fn hosvd_rank1_par<T: Real>(z: &ComplexTensor<T>) -> Result<RankOneFactors<T>> {
    check_hosvd_input(z)?;
    let vectors = (0..z.order()).into_par_iter().map(|n| mode_factor(z, n)).collect::<Result<Vec<_>>>()?;
    finish(z, vectors)
}
