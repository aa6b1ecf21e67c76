#![allow(dead_code)]

use hdr_core::channel::{build_channels, sample_params, SystemDims};
use hdr_core::linalg::CMat;
use hdr_core::{Channel, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_c64(rng: &mut impl Rng) -> C64 {
    C64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat<f64> {
    CMat::from_fn(rows, cols, |_, _| random_c64(rng))
}

/// Complex matrix with small integer real and imaginary parts, so products
/// are exact in floating point.
pub fn integer_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> CMat<f64> {
    CMat::from_fn(rows, cols, |_, _| C64::new(rng.random_range(-9..=9) as f64, rng.random_range(-9..=9) as f64))
}

pub fn random_vector(rng: &mut impl Rng, len: usize) -> Vec<C64> {
    (0..len).map(|_| random_c64(rng)).collect()
}

pub fn rel_err(a: &CMat<f64>, b: &CMat<f64>) -> f64 {
    a.sub(b).unwrap().frobenius_norm() / b.frobenius_norm()
}

pub fn random_channel(dims: &SystemDims, seed: u64) -> Channel {
    let params = sample_params(&mut rng(seed));
    build_channels(dims, &params)
}

pub fn kron_vec(a: &[C64], b: &[C64]) -> Vec<C64> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

pub fn normalized(v: &[C64]) -> Vec<C64> {
    let n = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    v.iter().map(|z| z / n).collect()
}

/// `|<u, v>|` for unit vectors.
pub fn alignment(u: &[C64], v: &[C64]) -> f64 {
    let u = normalized(u);
    let v = normalized(v);
    u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum::<C64>().norm()
}
