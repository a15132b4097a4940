//! Beamforming cancellation designs at the full-duplex node `(i)`.
//!
//! In every design `(k)` uses the eigen-precoder of `H_ki` and `(j)` the
//! eigen-combiner of `H_ij`; only the beamformers at `(i)` differ.

use serde::{Deserialize, Serialize};

use super::eigen::{eigen_combiner, eigen_precoder};
use super::hybrid::{exact_hybrid_decomposition, omp_hybrid_approx, HybridBeamformer};
use super::subspace::{null_space_basis, project_onto};
use crate::array::{quantize_phases, AnalogCodebook};
use crate::error::{Error, Result};
use crate::linalg::{scale_columns_to, CMat};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DesignCase {
    /// Unprojected fully-digital eigen-beamformers.
    EigenOnly,
    /// Unprojected eigen-beamformers approximated by OMP.
    EigenOmp,
    /// Null-space projected precoder, exact hybrid decomposition with `Nrf = 2 Ns`.
    CaseA,
    /// OMP hybrid approximation with the digital precoder projected.
    CaseB,
}

#[derive(Debug, Clone)]
pub struct BfcDesign {
    pub case: DesignCase,
    pub precoder_i: HybridBeamformer,
    pub combiner_i: HybridBeamformer,
    pub precoder_k: CMat,
    pub combiner_j: CMat,
    /// A stream was lost: a projected column vanished, the null space was
    /// empty, or an eigen-beamformer sat on a zero singular value.
    pub degenerate: bool,
    /// Dimension of the null space the precoder was projected onto (0 when unprojected).
    pub null_dim: usize,
}

impl BfcDesign {
    pub fn effective_precoder_i(&self) -> CMat {
        self.precoder_i.effective()
    }

    pub fn effective_combiner_i(&self) -> CMat {
        self.combiner_i.effective()
    }

    /// Self-interference that survives the combiner: `W_i^H H_ii F_i`.
    pub fn residual_si(&self, h_ii: &CMat) -> CMat {
        self.effective_combiner_i().adjoint() * h_ii * self.effective_precoder_i()
    }

    /// Snap the analog stages at `(i)` onto a `2^bits` phase grid.
    ///
    /// Only meaningful for hybrid designs; SI nulling is generally lost.
    pub fn with_quantized_analog(mut self, bits: u32) -> Result<Self> {
        for hb in [&mut self.precoder_i, &mut self.combiner_i] {
            let (r, k) = hb.analog.shape();
            let q = quantize_phases(hb.analog.as_slice(), bits)?;
            hb.analog = CMat::from_vec(r, k, q);
        }
        Ok(self)
    }
}

fn check_shapes(h_ki: &CMat, h_ij: &CMat, h_ii: &CMat) -> Result<()> {
    // H_ii maps the transmit array of (i) (same size as the one feeding H_ij)
    // onto its receive array (same size as the one behind H_ki)
    if h_ii.nrows() != h_ki.nrows() || h_ii.ncols() != h_ij.ncols() {
        return Err(Error::InvalidArgument(format!(
            "SI channel is {}x{} but arrays at (i) are {} receive x {} transmit",
            h_ii.nrows(),
            h_ii.ncols(),
            h_ki.nrows(),
            h_ij.ncols()
        )));
    }
    Ok(())
}

struct LinkBeams {
    precoder_k: CMat,
    combiner_j: CMat,
    combiner_i: CMat,
    precoder_i: CMat,
    degenerate: bool,
}

fn link_beams(h_ki: &CMat, h_ij: &CMat, ns: usize) -> Result<LinkBeams> {
    let pk = eigen_precoder(h_ki, ns)?;
    let wj = eigen_combiner(h_ij, ns)?;
    let wi = eigen_combiner(h_ki, ns)?;
    let fi = eigen_precoder(h_ij, ns)?;
    Ok(LinkBeams {
        degenerate: pk.degenerate || wj.degenerate,
        precoder_k: pk.matrix,
        combiner_j: wj.matrix,
        combiner_i: wi.matrix,
        precoder_i: fi.matrix,
    })
}

fn stream_floor(nt: usize) -> f64 {
    1e-12 * (nt as f64).sqrt()
}

pub fn design_eigen_only(h_ki: &CMat, h_ij: &CMat, ns: usize) -> Result<BfcDesign> {
    let beams = link_beams(h_ki, h_ij, ns)?;
    Ok(BfcDesign {
        case: DesignCase::EigenOnly,
        precoder_i: HybridBeamformer::fully_digital(beams.precoder_i),
        combiner_i: HybridBeamformer::fully_digital(beams.combiner_i),
        precoder_k: beams.precoder_k,
        combiner_j: beams.combiner_j,
        degenerate: beams.degenerate,
        null_dim: 0,
    })
}

/// Paired transmit/receive codebooks for the arrays at `(i)`.
#[derive(Debug, Clone)]
pub struct CodebookPair {
    pub tx: AnalogCodebook,
    pub rx: AnalogCodebook,
}

pub fn design_eigen_omp(
    h_ki: &CMat,
    h_ij: &CMat,
    ns: usize,
    nrf: usize,
    codebooks: &CodebookPair,
) -> Result<BfcDesign> {
    let beams = link_beams(h_ki, h_ij, ns)?;
    let combiner_i = omp_hybrid_approx(&beams.combiner_i, &codebooks.rx, nrf)?;
    let mut precoder_i = omp_hybrid_approx(&beams.precoder_i, &codebooks.tx, nrf)?;
    let nt = h_ij.ncols();
    let eff = precoder_i.effective();
    let norms: Vec<f64> = eff.column_iter().map(|c| c.norm()).collect();
    normalize_digital(&mut precoder_i, &norms, nt);
    Ok(BfcDesign {
        case: DesignCase::EigenOmp,
        precoder_i,
        combiner_i,
        precoder_k: beams.precoder_k,
        combiner_j: beams.combiner_j,
        degenerate: beams.degenerate,
        null_dim: 0,
    })
}

/// Scale digital columns so effective columns have norm `sqrt(nt)`; returns
/// true when a column was too small to rescale (and was zeroed).
fn normalize_digital(hb: &mut HybridBeamformer, effective_norms: &[f64], nt: usize) -> bool {
    let target = (nt as f64).sqrt();
    let floor = stream_floor(nt);
    let mut lost = false;
    for (mut col, &n) in hb.digital.column_iter_mut().zip(effective_norms) {
        if n > floor {
            col *= crate::linalg::real(target / n);
        } else {
            col.fill(crate::linalg::real(0.0));
            lost = true;
        }
    }
    lost
}

/// Case A: fully-digital null-space design, then exact `Nrf = 2 Ns` hybrid factorization.
///
/// The combiner at `(i)` is the eigen-combiner of `H_ki`. The eigen-precoder of
/// `H_ij` is projected onto the null space of `W_i^H H_ii` and its columns are
/// rescaled to `sqrt(Nt)`.
pub fn design_case_a(h_ki: &CMat, h_ij: &CMat, h_ii: &CMat, ns: usize) -> Result<BfcDesign> {
    check_shapes(h_ki, h_ij, h_ii)?;
    let beams = link_beams(h_ki, h_ij, ns)?;
    let nt = h_ij.ncols();

    let effective_si = beams.combiner_i.adjoint() * h_ii;
    let basis = null_space_basis(&effective_si)?;
    if basis.ncols() == 0 {
        return Err(Error::DesignInfeasible(format!(
            "effective SI channel {}x{} has an empty null space",
            effective_si.nrows(),
            effective_si.ncols()
        )));
    }
    let mut f = project_onto(&basis, &beams.precoder_i);
    let floor = stream_floor(nt);
    let norms = scale_columns_to(&mut f, (nt as f64).sqrt(), floor);
    let lost = norms.iter().any(|&n| n <= floor);

    Ok(BfcDesign {
        case: DesignCase::CaseA,
        precoder_i: exact_hybrid_decomposition(&f)?,
        combiner_i: exact_hybrid_decomposition(&beams.combiner_i)?,
        precoder_k: beams.precoder_k,
        combiner_j: beams.combiner_j,
        degenerate: beams.degenerate || lost,
        null_dim: basis.ncols(),
    })
}

/// Case B: codebook-constrained hybrid design with SI nulling in the digital stage.
///
/// Both beamformers at `(i)` are OMP approximations of their eigen
/// counterparts. The analog precoder is kept and the digital precoder is
/// projected onto the null space of `W_BB^H W_RF^H H_ii F_RF`. An empty null
/// space yields a zero digital precoder and a degenerate design.
pub fn design_case_b(
    h_ki: &CMat,
    h_ij: &CMat,
    h_ii: &CMat,
    ns: usize,
    nrf: usize,
    codebooks: &CodebookPair,
) -> Result<BfcDesign> {
    check_shapes(h_ki, h_ij, h_ii)?;
    let beams = link_beams(h_ki, h_ij, ns)?;
    let nt = h_ij.ncols();

    let combiner_i = omp_hybrid_approx(&beams.combiner_i, &codebooks.rx, nrf)?;
    let approx = omp_hybrid_approx(&beams.precoder_i, &codebooks.tx, nrf)?;

    let effective_si = combiner_i.effective().adjoint() * h_ii * &approx.analog;
    let basis = null_space_basis(&effective_si)?;
    let digital = project_onto(&basis, &approx.digital);
    let mut precoder_i = HybridBeamformer::new(approx.analog, digital)?;

    let lost = if basis.ncols() == 0 {
        true
    } else {
        let norms: Vec<f64> = precoder_i.effective().column_iter().map(|c| c.norm()).collect();
        normalize_digital(&mut precoder_i, &norms, nt)
    };

    Ok(BfcDesign {
        case: DesignCase::CaseB,
        precoder_i,
        combiner_i,
        precoder_k: beams.precoder_k,
        combiner_j: beams.combiner_j,
        degenerate: beams.degenerate || lost,
        null_dim: basis.ncols(),
    })
}
