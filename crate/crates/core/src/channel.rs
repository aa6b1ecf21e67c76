//! Line-of-sight BS-RIS-UE channel with uniform rectangular arrays.
//!
//! Every array lies in the y-z plane with half-wavelength spacing. A 2-D
//! steering vector factors as `v_y(μ) ⊗ v_z(ψ)` with the y index varying
//! slowest, so both channel matrices are Kronecker products of their y and z
//! parts. Channel gains are absorbed into the steering vectors (unit modulus).

use num_complex::Complex;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{hadamard, khatri_rao, kron, outer, CMat};
use crate::scalar::{cis, Real};

/// Array sizes and training lengths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SystemDims {
    /// BS antennas along y / z.
    pub m_y: usize,
    pub m_z: usize,
    /// UE antennas along y / z.
    pub q_y: usize,
    pub q_z: usize,
    /// RIS elements along y / z.
    pub n_y: usize,
    pub n_z: usize,
    /// Pilot length.
    pub t: usize,
    /// Number of RIS training blocks.
    pub k: usize,
}

impl SystemDims {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        m_y: usize,
        m_z: usize,
        q_y: usize,
        q_z: usize,
        n_y: usize,
        n_z: usize,
        t: usize,
        k: usize,
    ) -> Result<Self> {
        let d = Self { m_y, m_z, q_y, q_z, n_y, n_z, t, k };
        d.validate()?;
        Ok(d)
    }

    /// 4x4 arrays at BS, UE and RIS with T = K = 16.
    pub fn baseline() -> Self {
        Self { m_y: 4, m_z: 4, q_y: 4, q_z: 4, n_y: 4, n_z: 4, t: 16, k: 16 }
    }

    pub fn validate(&self) -> Result<()> {
        let extents = [self.m_y, self.m_z, self.q_y, self.q_z, self.n_y, self.n_z, self.t, self.k];
        if extents.contains(&0) {
            return Err(Error::InvalidArgument(format!("all dimensions must be positive: {self:?}")));
        }
        if self.t * self.k < self.m() * self.n() {
            return Err(Error::InfeasibleDesign(format!(
                "requires TK >= MN, got TK = {} < MN = {}",
                self.t * self.k,
                self.m() * self.n()
            )));
        }
        Ok(())
    }

    pub fn m(&self) -> usize {
        self.m_y * self.m_z
    }

    pub fn q(&self) -> usize {
        self.q_y * self.q_z
    }

    pub fn n(&self) -> usize {
        self.n_y * self.n_z
    }

    /// Extents of the sixth-order channel tensor, in mode order.
    pub fn hdr_tensor_dims(&self) -> [usize; 6] {
        [self.q_z, self.m_z, self.n_z, self.q_y, self.m_y, self.n_y]
    }
}

/// `(μ, ψ) = (π sinθ sinφ, π cosθ)` for azimuth `phi` and elevation `theta`.
pub fn spatial_frequencies<T: Real>(phi: T, theta: T) -> (T, T) {
    (T::PI() * theta.sin() * phi.sin(), T::PI() * theta.cos())
}

/// `[1, e^{-jf}, …, e^{-j(len-1)f}]`.
pub fn steering_1d<T: Real>(len: usize, freq: T) -> Vec<Complex<T>> {
    (0..len).map(|l| cis(-T::from_usize_lossy(l) * freq)).collect()
}

/// URA response `steering_1d(len_y, μ) ⊗ steering_1d(len_z, ψ)`.
pub fn steering_2d<T: Real>(len_y: usize, len_z: usize, mu: T, psi: T) -> Vec<Complex<T>> {
    let y = steering_1d(len_y, mu);
    let z = steering_1d(len_z, psi);
    y.iter().flat_map(|&a| z.iter().map(move |&b| a * b)).collect()
}

/// Azimuth/elevation pairs in radians for the four array ends.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Angles<T> {
    pub phi_bs: T,
    pub theta_bs: T,
    pub phi_ris_a: T,
    pub theta_ris_a: T,
    pub phi_ris_d: T,
    pub theta_ris_d: T,
    pub phi_ue: T,
    pub theta_ue: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpatialFrequencies<T> {
    pub mu_bs: T,
    pub psi_bs: T,
    pub mu_ris_a: T,
    pub psi_ris_a: T,
    pub mu_ris_d: T,
    pub psi_ris_d: T,
    pub mu_ue: T,
    pub psi_ue: T,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelParams<T> {
    pub angles: Angles<T>,
    pub freqs: SpatialFrequencies<T>,
}

impl<T: Real> ChannelParams<T> {
    pub fn from_angles(angles: Angles<T>) -> Self {
        let a = &angles;
        let (mu_bs, psi_bs) = spatial_frequencies(a.phi_bs, a.theta_bs);
        let (mu_ris_a, psi_ris_a) = spatial_frequencies(a.phi_ris_a, a.theta_ris_a);
        let (mu_ris_d, psi_ris_d) = spatial_frequencies(a.phi_ris_d, a.theta_ris_d);
        let (mu_ue, psi_ue) = spatial_frequencies(a.phi_ue, a.theta_ue);
        Self {
            angles,
            freqs: SpatialFrequencies { mu_bs, psi_bs, mu_ris_a, psi_ris_a, mu_ris_d, psi_ris_d, mu_ue, psi_ue },
        }
    }

    /// Angles given in degrees, ordered as the fields of [`Angles`].
    pub fn from_degrees(deg: [f64; 8]) -> Self {
        let r = |d: f64| T::lit(d.to_radians());
        Self::from_angles(Angles {
            phi_bs: r(deg[0]),
            theta_bs: r(deg[1]),
            phi_ris_a: r(deg[2]),
            theta_ris_a: r(deg[3]),
            phi_ris_d: r(deg[4]),
            theta_ris_d: r(deg[5]),
            phi_ue: r(deg[6]),
            theta_ue: r(deg[7]),
        })
    }
}

pub const AZIMUTH_RANGE_DEG: (f64, f64) = (-60.0, 60.0);
pub const ELEVATION_RANGE_DEG: (f64, f64) = (90.0, 130.0);

/// Draws the eight angles of one cell sector: azimuths uniform in
/// [-60°, 60°), elevations uniform in [90°, 130°).
pub fn sample_params<T: Real, R: Rng + ?Sized>(rng: &mut R) -> ChannelParams<T> {
    let mut deg = [0.0; 8];
    for pair in deg.chunks_exact_mut(2) {
        pair[0] = rng.random_range(AZIMUTH_RANGE_DEG.0..AZIMUTH_RANGE_DEG.1);
        pair[1] = rng.random_range(ELEVATION_RANGE_DEG.0..ELEVATION_RANGE_DEG.1);
    }
    ChannelParams::from_degrees(deg)
}

/// Ground-truth steering vectors and channel matrices of one link.
#[derive(Debug, Clone)]
pub struct ChannelRealization<T> {
    pub dims: SystemDims,
    /// BS departure.
    pub a_y: Vec<Complex<T>>,
    pub a_z: Vec<Complex<T>>,
    /// RIS arrival.
    pub b_y: Vec<Complex<T>>,
    pub b_z: Vec<Complex<T>>,
    /// RIS departure.
    pub p_y: Vec<Complex<T>>,
    pub p_z: Vec<Complex<T>>,
    /// UE arrival.
    pub q_y: Vec<Complex<T>>,
    pub q_z: Vec<Complex<T>>,
    /// Effective RIS vectors `b ⊙ p` per domain.
    pub n_y: Vec<Complex<T>>,
    pub n_z: Vec<Complex<T>>,
    pub h_y: CMat<T>,
    pub h_z: CMat<T>,
    pub g_y: CMat<T>,
    pub g_z: CMat<T>,
    /// BS to RIS, `N x M`.
    pub h: CMat<T>,
    /// RIS to UE, `Q x N`.
    pub g: CMat<T>,
    /// Khatri-Rao channel `H^T ⋄ G`, `QM x N`.
    pub e: CMat<T>,
}

pub fn build_channels<T: Real>(dims: &SystemDims, params: &ChannelParams<T>) -> ChannelRealization<T> {
    let f = &params.freqs;
    let a_y = steering_1d(dims.m_y, f.mu_bs);
    let a_z = steering_1d(dims.m_z, f.psi_bs);
    let b_y = steering_1d(dims.n_y, f.mu_ris_a);
    let b_z = steering_1d(dims.n_z, f.psi_ris_a);
    let p_y = steering_1d(dims.n_y, f.mu_ris_d);
    let p_z = steering_1d(dims.n_z, f.psi_ris_d);
    let q_y = steering_1d(dims.q_y, f.mu_ue);
    let q_z = steering_1d(dims.q_z, f.psi_ue);
    let n_y = hadamard(&b_y, &p_y).expect("equal RIS lengths");
    let n_z = hadamard(&b_z, &p_z).expect("equal RIS lengths");

    let h_y = outer(&b_y, &a_y);
    let h_z = outer(&b_z, &a_z);
    let g_y = outer(&q_y, &p_y);
    let g_z = outer(&q_z, &p_z);
    let h = kron(&h_y, &h_z);
    let g = kron(&g_y, &g_z);
    let e = khatri_rao(&h.transpose(), &g).expect("H^T and G share N columns");

    ChannelRealization { dims: *dims, a_y, a_z, b_y, b_z, p_y, p_z, q_y, q_z, n_y, n_z, h_y, h_z, g_y, g_z, h, g, e }
}

fn kron_vec<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Vec<Complex<T>> {
    a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect()
}

impl<T: Real> ChannelRealization<T> {
    /// Full BS steering vector `a_y ⊗ a_z`.
    pub fn a(&self) -> Vec<Complex<T>> {
        kron_vec(&self.a_y, &self.a_z)
    }

    /// Full UE steering vector `q_y ⊗ q_z`.
    pub fn q(&self) -> Vec<Complex<T>> {
        kron_vec(&self.q_y, &self.q_z)
    }

    /// Effective RIS vector `n_y ⊗ n_z = b ⊙ p`.
    pub fn n(&self) -> Vec<Complex<T>> {
        kron_vec(&self.n_y, &self.n_z)
    }

    /// Effective `Q x M` channel `G diag(ω) H` for RIS phases `omega`.
    pub fn effective(&self, omega: &[Complex<T>]) -> Result<CMat<T>> {
        if omega.len() != self.dims.n() {
            return Err(Error::DimensionMismatch(format!("{} RIS phases for {} elements", omega.len(), self.dims.n())));
        }
        let scaled = CMat::from_fn(self.g.rows(), self.g.cols(), |i, j| self.g[(i, j)] * omega[j]);
        scaled.matmul(&self.h)
    }
}
