//! Uniform linear arrays: element placement, steering vectors, DFT codebooks
//! and finite-resolution phase quantization.
//!
//! All lengths are in carrier wavelengths and all angles are azimuth-only.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{CMat, CVec};

/// Placement of a ULA in the plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UlaGeometry {
    pub num_elements: usize,
    /// Inter-element spacing in wavelengths.
    pub spacing: f64,
    pub center: [f64; 2],
    /// Orientation of the array axis, radians.
    pub axis_angle: f64,
}

impl UlaGeometry {
    /// Half-wavelength ULA centered at the origin along the x axis.
    pub fn new(num_elements: usize) -> Result<Self> {
        Self::placed(num_elements, 0.5, [0.0, 0.0], 0.0)
    }

    pub fn placed(num_elements: usize, spacing: f64, center: [f64; 2], axis_angle: f64) -> Result<Self> {
        let g = UlaGeometry {
            num_elements,
            spacing,
            center,
            axis_angle,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        if self.num_elements == 0 {
            return Err(Error::InvalidArgument("array needs at least one element".into()));
        }
        if !(self.spacing > 0.0 && self.spacing.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "element spacing must be positive, got {}",
                self.spacing
            )));
        }
        if !(self.center.iter().all(|x| x.is_finite()) && self.axis_angle.is_finite()) {
            return Err(Error::InvalidArgument("array placement must be finite".into()));
        }
        Ok(())
    }

    /// Element positions, symmetric about the center and ordered along the axis.
    pub fn element_positions(&self) -> Vec<[f64; 2]> {
        let (s, c) = self.axis_angle.sin_cos();
        let mid = (self.num_elements as f64 - 1.0) / 2.0;
        (0..self.num_elements)
            .map(|n| {
                let offset = (n as f64 - mid) * self.spacing;
                [self.center[0] + offset * c, self.center[1] + offset * s]
            })
            .collect()
    }

    /// Response of this array toward `theta`, referenced to the first element.
    pub fn response(&self, theta: f64) -> CVec {
        let phase = 2.0 * PI * self.spacing * theta.cos();
        CVec::from_iterator(
            self.num_elements,
            (0..self.num_elements).map(|n| Complex64::from_polar(1.0, n as f64 * phase)),
        )
    }
}

/// Half-wavelength ULA response: entry `n` is `exp(i * n * pi * cos(theta))`.
pub fn steering_vector(num_elements: usize, theta: f64) -> Result<CVec> {
    if num_elements == 0 {
        return Err(Error::InvalidArgument("steering vector needs at least one element".into()));
    }
    let phase = PI * theta.cos();
    Ok(CVec::from_iterator(
        num_elements,
        (0..num_elements).map(|n| Complex64::from_polar(1.0, n as f64 * phase)),
    ))
}

/// Candidate analog beamforming vectors, one per column, all entries unit-modulus.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalogCodebook {
    matrix: CMat,
}

impl AnalogCodebook {
    pub fn new(matrix: CMat) -> Result<Self> {
        if matrix.ncols() == 0 || matrix.nrows() == 0 {
            return Err(Error::InvalidArgument("codebook must be nonempty".into()));
        }
        if let Some(z) = matrix.iter().find(|z| (z.norm() - 1.0).abs() > 1e-12) {
            return Err(Error::InvalidArgument(format!(
                "codebook entries must be unit-modulus, found |{z}| = {}",
                z.norm()
            )));
        }
        Ok(AnalogCodebook { matrix })
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn num_elements(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn len(&self) -> usize {
        self.matrix.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.matrix.ncols() == 0
    }

    /// Snap every entry onto a `2^bits`-point phase grid.
    pub fn quantized(&self, bits: u32) -> Result<Self> {
        let data: Vec<Complex64> = quantize_phases(self.matrix.as_slice(), bits)?;
        Ok(AnalogCodebook {
            matrix: CMat::from_vec(self.matrix.nrows(), self.matrix.ncols(), data),
        })
    }
}

/// DFT codebook: column `k` has entries `exp(-i 2 pi n k / Na)`.
pub fn dft_codebook(num_elements: usize) -> Result<AnalogCodebook> {
    if num_elements == 0 {
        return Err(Error::InvalidArgument("codebook needs at least one element".into()));
    }
    let na = num_elements as f64;
    let m = CMat::from_fn(num_elements, num_elements, |n, k| {
        // reduce n*k mod Na first so large arrays keep exact phases
        let idx = (n * k) % num_elements;
        Complex64::from_polar(1.0, -2.0 * PI * idx as f64 / na)
    });
    Ok(AnalogCodebook { matrix: m })
}

/// Snap each entry's phase to the nearest multiple of `2 pi / 2^bits` and
/// discard its magnitude. Zero entries map to phase 0.
pub fn quantize_phases(v: &[Complex64], bits: u32) -> Result<Vec<Complex64>> {
    if bits == 0 || bits > 52 {
        return Err(Error::InvalidArgument(format!(
            "phase resolution must be between 1 and 52 bits, got {bits}"
        )));
    }
    let levels = (1u64 << bits) as f64;
    let step = 2.0 * PI / levels;
    Ok(v.iter()
        .map(|z| {
            let k = (z.arg() / step).round().rem_euclid(levels);
            Complex64::from_polar(1.0, k * step)
        })
        .collect())
}
