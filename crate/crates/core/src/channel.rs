//! Random channel generators.
//!
//! Desired links use the extended Saleh-Valenzuela clustered model with
//! Laplacian angular spread. The self-interference channel is Rician: a
//! deterministic near-field spherical-wave LOS term from the physical
//! placement of the two arrays, plus a sparse clustered NLOS term.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::array::UlaGeometry;
use crate::error::{Error, Result};
use crate::linalg::{real, CMat, CVec};

/// Inclusive integer interval for uniform draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntRange {
    pub min: usize,
    pub max: usize,
}

impl IntRange {
    pub const fn new(min: usize, max: usize) -> Self {
        IntRange { min, max }
    }

    fn validate(&self, what: &str) -> Result<()> {
        if self.min < 1 || self.min > self.max {
            return Err(Error::InvalidArgument(format!(
                "{what} range [{}, {}] must satisfy 1 <= min <= max",
                self.min, self.max
            )));
        }
        Ok(())
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        rng.random_range(self.min..=self.max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClusteredChannelParams {
    pub clusters: IntRange,
    pub rays: IntRange,
    /// Interval for each cluster's mean AoA/AoD, radians.
    pub angle_mean_range: (f64, f64),
    /// Standard deviation of the per-ray Laplacian spread, radians.
    pub angular_std: f64,
}

impl ClusteredChannelParams {
    /// Desired-link defaults: 1..=6 clusters, 1..=10 rays, means on [0, pi], std 0.2.
    pub fn desired_link() -> Self {
        ClusteredChannelParams {
            clusters: IntRange::new(1, 6),
            rays: IntRange::new(1, 10),
            angle_mean_range: (0.0, PI),
            angular_std: 0.2,
        }
    }

    /// Sparser scattering for the NLOS part of the SI channel.
    pub fn si_nlos() -> Self {
        ClusteredChannelParams {
            clusters: IntRange::new(1, 3),
            rays: IntRange::new(1, 3),
            ..Self::desired_link()
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.clusters.validate("cluster")?;
        self.rays.validate("ray")?;
        let (lo, hi) = self.angle_mean_range;
        if !(lo.is_finite() && hi.is_finite() && lo <= hi) {
            return Err(Error::InvalidArgument(format!("bad angle range [{lo}, {hi}]")));
        }
        if !(self.angular_std > 0.0 && self.angular_std.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "angular std must be positive, got {}",
                self.angular_std
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ChannelKind {
    Desired,
    SiLos,
    SiNlos,
    SiComposite,
}

impl ChannelKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ChannelKind::Desired => "desired",
            ChannelKind::SiLos => "si_los",
            ChannelKind::SiNlos => "si_nlos",
            ChannelKind::SiComposite => "si_composite",
        }
    }
}

/// An `Nr x Nt` channel.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    pub h: CMat,
    pub kind: ChannelKind,
}

impl ChannelMatrix {
    pub fn new(h: CMat, kind: ChannelKind) -> Self {
        ChannelMatrix { h, kind }
    }

    pub fn nr(&self) -> usize {
        self.h.nrows()
    }

    pub fn nt(&self) -> usize {
        self.h.ncols()
    }
}

/// One propagation path of the clustered model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Ray {
    pub gain: Complex64,
    pub aoa: f64,
    pub aod: f64,
}

/// Laplace sample with the given mean and standard deviation (scale `std / sqrt(2)`).
pub fn sample_laplacian<R: Rng + ?Sized>(mean: f64, std: f64, rng: &mut R) -> f64 {
    // u uniform on [0, 1)
    laplacian_inverse_cdf(mean, std, rng.random::<f64>())
}

/// Inverse CDF of the Laplace distribution, `u` in `[0, 1)`.
pub fn laplacian_inverse_cdf(mean: f64, std: f64, u: f64) -> f64 {
    let b = std / std::f64::consts::SQRT_2;
    let centered = u - 0.5;
    if centered == 0.0 || b == 0.0 {
        return mean;
    }
    mean - b * centered.signum() * (1.0 - 2.0 * centered.abs()).ln()
}

fn sample_cn01<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Draw the ray set of one clustered-channel realization.
///
/// Draw order per realization: cluster count, ray count, then per cluster the
/// AoD mean and AoA mean, then per ray the AoA, AoD and complex gain.
pub fn draw_rays<R: Rng + ?Sized>(params: &ClusteredChannelParams, rng: &mut R) -> Result<Vec<Ray>> {
    params.validate()?;
    let n_clust = params.clusters.sample(rng);
    let n_rays = params.rays.sample(rng);
    let (lo, hi) = params.angle_mean_range;
    let mut rays = Vec::with_capacity(n_clust * n_rays);
    for _ in 0..n_clust {
        let mean_aod = lo + (hi - lo) * rng.random::<f64>();
        let mean_aoa = lo + (hi - lo) * rng.random::<f64>();
        for _ in 0..n_rays {
            let aoa = sample_laplacian(mean_aoa, params.angular_std, rng);
            let aod = sample_laplacian(mean_aod, params.angular_std, rng);
            let gain = sample_cn01(rng);
            rays.push(Ray { gain, aoa, aod });
        }
    }
    Ok(rays)
}

/// Sum of rays with unit-norm half-wavelength array responses, scaled by
/// `sqrt(Nt Nr / L)` for `L` rays so that `E ||H||_F^2 = Nt Nr`.
pub fn channel_from_rays(nt: usize, nr: usize, rays: &[Ray]) -> Result<CMat> {
    if nt == 0 || nr == 0 {
        return Err(Error::InvalidArgument(format!("channel dims must be positive, got {nr}x{nt}")));
    }
    if rays.is_empty() {
        return Err(Error::InvalidArgument("channel needs at least one ray".into()));
    }
    let rx = UlaGeometry::new(nr)?;
    let tx = UlaGeometry::new(nt)?;
    let norm_r = 1.0 / (nr as f64).sqrt();
    let norm_t = 1.0 / (nt as f64).sqrt();
    let mut h = CMat::zeros(nr, nt);
    for ray in rays {
        let a_r: CVec = rx.response(ray.aoa) * real(norm_r);
        let a_t: CVec = tx.response(ray.aod) * real(norm_t);
        h += (a_r * ray.gain) * a_t.adjoint();
    }
    let scale = ((nt * nr) as f64 / rays.len() as f64).sqrt();
    Ok(h * real(scale))
}

pub fn gen_clustered_channel<R: Rng + ?Sized>(
    params: &ClusteredChannelParams,
    nt: usize,
    nr: usize,
    rng: &mut R,
) -> Result<ChannelMatrix> {
    let rays = draw_rays(params, rng)?;
    Ok(ChannelMatrix::new(channel_from_rays(nt, nr, &rays)?, ChannelKind::Desired))
}

/// Relative placement of the transmit and receive arrays of the full-duplex node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SiGeometry {
    pub tx_array: UlaGeometry,
    pub rx_array: UlaGeometry,
    /// Center-to-center distance, wavelengths.
    pub separation: f64,
    /// Bearing of the receive array's center, measured from the transmit array axis.
    pub angle: f64,
}

impl SiGeometry {
    /// Transmit array at the origin along x; receive array centered at
    /// `separation` along bearing `angle` with its axis rotated by `rx_rotation`.
    pub fn new(
        nt: usize,
        nr: usize,
        spacing: f64,
        separation: f64,
        angle: f64,
        rx_rotation: f64,
    ) -> Result<Self> {
        if !(separation > 0.0 && separation.is_finite()) {
            return Err(Error::InvalidGeometry(format!(
                "array separation must be positive, got {separation}"
            )));
        }
        let tx_array = UlaGeometry::placed(nt, spacing, [0.0, 0.0], 0.0)?;
        let center = [separation * angle.cos(), separation * angle.sin()];
        let rx_array = UlaGeometry::placed(nr, spacing, center, rx_rotation)?;
        Ok(SiGeometry {
            tx_array,
            rx_array,
            separation,
            angle,
        })
    }

    /// Default placement: half-wavelength arrays 10 wavelengths apart at pi/6,
    /// receive axis rotated by the same pi/6.
    pub fn default_for(nt: usize, nr: usize) -> Result<Self> {
        Self::new(nt, nr, 0.5, 10.0, PI / 6.0, PI / 6.0)
    }

    /// `Nr x Nt` matrix of element-pair distances (receive element, transmit element).
    pub fn distances(&self) -> CMatReal {
        let tx = self.tx_array.element_positions();
        let rx = self.rx_array.element_positions();
        let mut d = CMatReal::zeros(rx.len(), tx.len());
        for (m, p) in rx.iter().enumerate() {
            for (n, q) in tx.iter().enumerate() {
                d[(m, n)] = ((p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2)).sqrt();
            }
        }
        d
    }
}

pub type CMatReal = nalgebra::DMatrix<f64>;

/// Near-field LOS SI channel, entries `(rho / r) exp(-i 2 pi r)` with `r` in
/// wavelengths and `rho` fixed so that `||H||_F^2 = Nt Nr`.
pub fn gen_los_si_channel(geom: &SiGeometry) -> Result<ChannelMatrix> {
    geom.tx_array.validate()?;
    geom.rx_array.validate()?;
    let d = geom.distances();
    if let Some(r) = d.iter().find(|&&r| !(r > 0.0)) {
        return Err(Error::InvalidGeometry(format!(
            "coincident transmit and receive elements (distance {r})"
        )));
    }
    let (nr, nt) = d.shape();
    let inv_sq: f64 = d.iter().map(|r| 1.0 / (r * r)).sum();
    let rho = ((nt * nr) as f64 / inv_sq).sqrt();
    let h = CMat::from_fn(nr, nt, |m, n| {
        let r = d[(m, n)];
        Complex64::from_polar(rho / r, -2.0 * PI * r)
    });
    Ok(ChannelMatrix::new(h, ChannelKind::SiLos))
}

/// LOS and NLOS amplitude weights for a Rician factor in dB.
pub fn rician_weights(kappa_db: f64) -> (f64, f64) {
    if kappa_db == f64::INFINITY {
        return (1.0, 0.0);
    }
    let k = 10f64.powf(kappa_db / 10.0);
    ((k / (k + 1.0)).sqrt(), (1.0 / (k + 1.0)).sqrt())
}

/// Combine a LOS SI matrix with a fresh NLOS draw.
pub fn compose_si_channel<R: Rng + ?Sized>(
    kappa_db: f64,
    los: &ChannelMatrix,
    nlos_params: &ClusteredChannelParams,
    rng: &mut R,
) -> Result<ChannelMatrix> {
    if kappa_db.is_nan() {
        return Err(Error::InvalidArgument("Rician factor is NaN".into()));
    }
    // always draw so the RNG stream does not depend on kappa
    let nlos = gen_clustered_channel(nlos_params, los.nt(), los.nr(), rng)?;
    let (w_los, w_nlos) = rician_weights(kappa_db);
    let h = if w_nlos == 0.0 {
        los.h.clone()
    } else if w_los == 0.0 {
        nlos.h
    } else {
        &los.h * real(w_los) + nlos.h * real(w_nlos)
    };
    Ok(ChannelMatrix::new(h, ChannelKind::SiComposite))
}

pub fn gen_si_channel<R: Rng + ?Sized>(
    kappa_db: f64,
    geom: &SiGeometry,
    nlos_params: &ClusteredChannelParams,
    rng: &mut R,
) -> Result<ChannelMatrix> {
    let los = gen_los_si_channel(geom)?;
    compose_si_channel(kappa_db, &los, nlos_params, rng)
}
