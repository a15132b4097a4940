//! Analog/digital factorizations of fully-digital beamformers.

use num_complex::Complex64;

use crate::array::AnalogCodebook;
use crate::error::{Error, Result};
use crate::linalg::{real, CMat};

/// Analog stage (`Na x Nrf`) cascaded with a digital stage (`Nrf x Ns`).
#[derive(Debug, Clone, PartialEq)]
pub struct HybridBeamformer {
    pub analog: CMat,
    pub digital: CMat,
}

impl HybridBeamformer {
    pub fn new(analog: CMat, digital: CMat) -> Result<Self> {
        if analog.ncols() != digital.nrows() {
            return Err(Error::InvalidArgument(format!(
                "analog has {} RF chains but digital has {} rows",
                analog.ncols(),
                digital.nrows()
            )));
        }
        Ok(HybridBeamformer { analog, digital })
    }

    /// Fully-digital beamformer viewed as a hybrid one with identity analog stage.
    pub fn fully_digital(f: CMat) -> Self {
        let na = f.nrows();
        HybridBeamformer {
            analog: CMat::identity(na, na),
            digital: f,
        }
    }

    pub fn effective(&self) -> CMat {
        &self.analog * &self.digital
    }

    pub fn num_elements(&self) -> usize {
        self.analog.nrows()
    }

    pub fn num_rf_chains(&self) -> usize {
        self.analog.ncols()
    }

    pub fn num_streams(&self) -> usize {
        self.digital.ncols()
    }

    /// Largest deviation of an analog entry's magnitude from one.
    pub fn max_modulus_error(&self) -> f64 {
        self.analog
            .iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Exact factorization with `Nrf = 2 Ns` phase-only analog columns.
///
/// Each entry `f = |f| e^{i psi}` of column `i` is written as
/// `beta (e^{i(psi + a)} + e^{i(psi - a)})` with `a = acos(|f| / (2 beta))`
/// and `beta = max |f| / 2` over that column.
pub fn exact_hybrid_decomposition(f: &CMat) -> Result<HybridBeamformer> {
    if f.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
        return Err(Error::InvalidArgument("beamformer has non-finite entries".into()));
    }
    let (na, ns) = f.shape();
    let mut analog = CMat::from_element(na, 2 * ns, real(1.0));
    let mut digital = CMat::zeros(2 * ns, ns);
    for (i, col) in f.column_iter().enumerate() {
        let beta = col.iter().map(|z| z.norm()).fold(0.0, f64::max) / 2.0;
        if beta == 0.0 {
            // analog columns stay all-ones, digital stays zero
            continue;
        }
        for (m, z) in col.iter().enumerate() {
            let psi = z.arg();
            let spread = (z.norm() / (2.0 * beta)).clamp(0.0, 1.0).acos();
            analog[(m, 2 * i)] = Complex64::from_polar(1.0, psi + spread);
            analog[(m, 2 * i + 1)] = Complex64::from_polar(1.0, psi - spread);
        }
        digital[(2 * i, i)] = real(beta);
        digital[(2 * i + 1, i)] = real(beta);
    }
    Ok(HybridBeamformer { analog, digital })
}

/// Greedy OMP approximation of `target` with at most `nrf` codebook columns.
///
/// Each iteration picks the unused codebook column with the largest
/// correlation energy against the normalized residual (lowest index on ties),
/// refits the digital stage by least squares, and stops early once the
/// residual vanishes. The digital stage is finally rescaled so each effective
/// column has the norm of the matching target column.
pub fn omp_hybrid_approx(target: &CMat, codebook: &AnalogCodebook, nrf: usize) -> Result<HybridBeamformer> {
    let a = codebook.matrix();
    if nrf == 0 {
        return Err(Error::InvalidArgument("OMP needs at least one RF chain".into()));
    }
    if a.nrows() != target.nrows() {
        return Err(Error::InvalidArgument(format!(
            "codebook has {} elements but target has {} rows",
            a.nrows(),
            target.nrows()
        )));
    }
    let target_norm = target.norm();
    if target_norm == 0.0 {
        return Ok(HybridBeamformer {
            analog: a.columns(0, 1).into_owned(),
            digital: CMat::zeros(1, target.ncols()),
        });
    }

    let mut selected: Vec<usize> = Vec::with_capacity(nrf);
    let mut residual = target.clone();
    let mut analog = CMat::zeros(a.nrows(), 0);
    let mut digital = CMat::zeros(0, target.ncols());
    while selected.len() < nrf.min(a.ncols()) {
        let psi = a.adjoint() * &residual;
        let energy: Vec<f64> = psi.row_iter().map(|r| r.norm_squared()).collect();
        // re-selecting a column leaves the span and hence the residual unchanged
        let pick = (0..a.ncols())
            .filter(|k| !selected.contains(k))
            .fold(None::<usize>, |best, k| match best {
                Some(b) if energy[b] >= energy[k] => Some(b),
                _ => Some(k),
            });
        let Some(pick) = pick else { break };
        selected.push(pick);

        analog = a.select_columns(selected.iter());
        digital = analog
            .clone()
            .pseudo_inverse(1e-14)
            .map_err(|e| Error::Numerical(format!("OMP least squares: {e}")))?
            * target;
        let diff = target - &analog * &digital;
        let diff_norm = diff.norm();
        if diff_norm <= 1e-13 * target_norm {
            break;
        }
        residual = diff / real(diff_norm);
    }

    let effective = &analog * &digital;
    for (k, mut col) in digital.column_iter_mut().enumerate() {
        let have = effective.column(k).norm();
        let want = target.column(k).norm();
        if have > 0.0 {
            col *= real(want / have);
        }
    }
    Ok(HybridBeamformer { analog, digital })
}
