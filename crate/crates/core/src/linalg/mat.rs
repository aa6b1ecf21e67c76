use std::ops::{Index, IndexMut};

use num_complex::Complex;
use num_traits::{One, Zero};

use super::flops;
use crate::error::{Error, Result};
use crate::scalar::{abs2, Real};

/// Dense complex matrix in column-major order.
#[derive(Debug, Clone, PartialEq)]
pub struct CMat<T> {
    rows: usize,
    cols: usize,
    data: Vec<Complex<T>>,
}

impl<T: Real> CMat<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Complex::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Complex<T>) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for j in 0..cols {
            for i in 0..rows {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_col_major(rows: usize, cols: usize, data: Vec<Complex<T>>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!("{} elements for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Self { rows, cols, data })
    }

    /// Single-column matrix holding `v`.
    pub fn column(v: Vec<Complex<T>>) -> Self {
        Self { rows: v.len(), cols: 1, data: v }
    }

    pub fn diag(d: &[Complex<T>]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, &x) in d.iter().enumerate() {
            m[(i, i)] = x;
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn data(&self) -> &[Complex<T>] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [Complex<T>] {
        &mut self.data
    }

    pub fn into_data(self) -> Vec<Complex<T>> {
        self.data
    }

    pub fn col(&self, j: usize) -> &[Complex<T>] {
        &self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn col_mut(&mut self, j: usize) -> &mut [Complex<T>] {
        &mut self.data[j * self.rows..(j + 1) * self.rows]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|z| z.conj()).collect() }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].conj())
    }

    pub fn scale(&self, s: Complex<T>) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|&z| z * s).collect() }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a - b).collect(),
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other)?;
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| a + b).collect(),
        })
    }

    fn check_same_shape(&self, other: &Self) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!("{:?} vs {:?}", self.shape(), other.shape())));
        }
        Ok(())
    }

    /// Matrix product; an `a x b` by `b x c` product counts `a*b*c` MACs.
    pub fn matmul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!("matmul {:?} x {:?}", self.shape(), rhs.shape())));
        }
        let (m, k, n) = (self.rows, self.cols, rhs.cols);
        let mut out = Self::zeros(m, n);
        for j in 0..n {
            let dst = &mut out.data[j * m..(j + 1) * m];
            for p in 0..k {
                let b = rhs.data[j * k + p];
                if b.is_zero() {
                    continue;
                }
                let a = &self.data[p * m..(p + 1) * m];
                for (d, &x) in dst.iter_mut().zip(a) {
                    *d += x * b;
                }
            }
        }
        flops::record(m * k * n);
        Ok(out)
    }

    /// `A * A^H`; only the upper triangle is computed, so it counts
    /// `rows*(rows+1)/2*cols` MACs.
    pub fn gram_rows(&self) -> Self {
        let m = self.rows;
        let mut g = Self::zeros(m, m);
        for j in 0..self.cols {
            let c = self.col(j);
            for b in 0..m {
                let cb = c[b].conj();
                for (a, &ca) in c[..=b].iter().enumerate() {
                    g.data[b * m + a] += ca * cb;
                }
            }
        }
        for b in 0..m {
            for a in 0..b {
                g.data[a * m + b] = g.data[b * m + a].conj();
            }
        }
        flops::record(m * (m + 1) / 2 * self.cols);
        g
    }

    /// `A^H * A`; counts `cols*(cols+1)/2*rows` MACs.
    pub fn gram_cols(&self) -> Self {
        let n = self.cols;
        let mut g = Self::zeros(n, n);
        for b in 0..n {
            for a in 0..=b {
                let s: Complex<T> = self.col(a).iter().zip(self.col(b)).map(|(x, y)| x.conj() * y).sum();
                g.data[b * n + a] = s;
                g.data[a * n + b] = s.conj();
            }
        }
        flops::record(n * (n + 1) / 2 * self.rows);
        g
    }

    /// `A * x`.
    pub fn mul_vec(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if x.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "matrix {:?} times vector of length {}",
                self.shape(),
                x.len()
            )));
        }
        let mut y = vec![Complex::zero(); self.rows];
        for (j, &xj) in x.iter().enumerate() {
            for (yi, &a) in y.iter_mut().zip(self.col(j)) {
                *yi += a * xj;
            }
        }
        flops::record(self.rows * self.cols);
        Ok(y)
    }

    /// `A^H * x`.
    pub fn adjoint_mul_vec(&self, x: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
        if x.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "adjoint of {:?} times vector of length {}",
                self.shape(),
                x.len()
            )));
        }
        let y = (0..self.cols).map(|j| self.col(j).iter().zip(x).map(|(a, b)| a.conj() * b).sum()).collect();
        flops::record(self.rows * self.cols);
        Ok(y)
    }

    pub fn frobenius_norm_sq(&self) -> T {
        self.data.iter().map(|&z| abs2(z)).sum()
    }

    pub fn frobenius_norm(&self) -> T {
        self.frobenius_norm_sq().sqrt()
    }

    pub fn max_abs_diff(&self, other: &Self) -> Result<T> {
        self.check_same_shape(other)?;
        Ok(self.data.iter().zip(&other.data).map(|(&a, &b)| (a - b).norm()).fold(T::zero(), T::max))
    }
}

impl<T> Index<(usize, usize)> for CMat<T> {
    type Output = Complex<T>;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[j * self.rows + i]
    }
}

impl<T> IndexMut<(usize, usize)> for CMat<T> {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex<T> {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[j * self.rows + i]
    }
}

/// Kronecker product: entry `(ia*rows(b)+ib, ja*cols(b)+jb)` is `a[ia,ja]*b[ib,jb]`.
pub fn kron<T: Real>(a: &CMat<T>, b: &CMat<T>) -> CMat<T> {
    let (rb, cb) = b.shape();
    let out = CMat::from_fn(a.rows * rb, a.cols * cb, |i, j| a[(i / rb, j / cb)] * b[(i % rb, j % cb)]);
    flops::record(out.data.len());
    out
}

/// Column-wise Kronecker product: column `n` is `a[:,n] ⊗ b[:,n]`.
pub fn khatri_rao<T: Real>(a: &CMat<T>, b: &CMat<T>) -> Result<CMat<T>> {
    if a.cols != b.cols {
        return Err(Error::DimensionMismatch(format!(
            "khatri-rao needs equal column counts, got {} and {}",
            a.cols, b.cols
        )));
    }
    let rb = b.rows;
    let out = CMat::from_fn(a.rows * rb, a.cols, |i, n| a[(i / rb, n)] * b[(i % rb, n)]);
    flops::record(out.data.len());
    Ok(out)
}

/// Element-wise product of two vectors.
pub fn hadamard<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Result<Vec<Complex<T>>> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(format!("hadamard of lengths {} and {}", a.len(), b.len())));
    }
    Ok(a.iter().zip(b).map(|(&x, &y)| x * y).collect())
}

/// `a * b^T` (no conjugation).
pub fn outer<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> CMat<T> {
    let out = CMat::from_fn(a.len(), b.len(), |i, j| a[i] * b[j]);
    flops::record(out.data.len());
    out
}

/// Stacks the columns of `a`.
pub fn vec<T: Real>(a: &CMat<T>) -> Vec<Complex<T>> {
    a.data.clone()
}

/// Inverse of [`vec`]: column-major `rows x cols` matrix.
pub fn unvec<T: Real>(v: &[Complex<T>], rows: usize, cols: usize) -> Result<CMat<T>> {
    CMat::from_col_major(rows, cols, v.to_vec())
}
