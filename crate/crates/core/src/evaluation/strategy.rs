use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::rate::{db_to_linear, se_link_no_si, se_link_with_si};
use crate::beamforming::{
    design_case_a, design_case_b, design_eigen_only, design_eigen_omp, eigen_combiner, eigen_precoder,
    BfcDesign, CodebookPair,
};
use crate::channel::ChannelMatrix;
use crate::error::{Error, Result};
use crate::linalg::CMat;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StrategyKind {
    /// One node transmits at a time: the two SI-free links time-share equally.
    HalfDuplex,
    /// Both links at their SI-free eigen-beamformed rates.
    IdealFd,
    EigenOnly,
    EigenOmp,
    CaseA,
    CaseB,
}

impl StrategyKind {
    fn name(&self) -> &'static str {
        match self {
            StrategyKind::HalfDuplex => "hd",
            StrategyKind::IdealFd => "ideal_fd",
            StrategyKind::EigenOnly => "eigen_only",
            StrategyKind::EigenOmp => "eigen_omp",
            StrategyKind::CaseA => "case_a",
            StrategyKind::CaseB => "case_b",
        }
    }

    /// Whether the number of RF chains at `(i)` changes the outcome.
    pub fn uses_rf_chains(&self) -> bool {
        matches!(self, StrategyKind::EigenOmp | StrategyKind::CaseB)
    }
}

/// A strategy with an optional per-strategy RF chain count, written
/// `case_b` or `case_b:4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Strategy {
    pub kind: StrategyKind,
    pub nrf: Option<usize>,
}

impl Strategy {
    pub const fn new(kind: StrategyKind) -> Self {
        Strategy { kind, nrf: None }
    }

    pub const fn with_nrf(kind: StrategyKind, nrf: usize) -> Self {
        Strategy { kind, nrf: Some(nrf) }
    }

    pub fn effective_nrf(&self, default_nrf: usize) -> usize {
        self.nrf.unwrap_or(default_nrf)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.nrf {
            Some(n) => write!(f, "{}:{}", self.kind.name(), n),
            None => f.write_str(self.kind.name()),
        }
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, nrf) = match s.split_once(':') {
            Some((n, r)) => {
                let r: usize = r
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidArgument(format!("bad RF chain count in strategy `{s}`")))?;
                if r == 0 {
                    return Err(Error::InvalidArgument(format!("strategy `{s}` needs at least one RF chain")));
                }
                (n.trim(), Some(r))
            }
            None => (s, None),
        };
        let kind = match name {
            "hd" | "hd_baseline" => StrategyKind::HalfDuplex,
            "ideal_fd" => StrategyKind::IdealFd,
            "eigen_only" => StrategyKind::EigenOnly,
            "eigen_omp" => StrategyKind::EigenOmp,
            "case_a" => StrategyKind::CaseA,
            "case_b" => StrategyKind::CaseB,
            other => return Err(Error::InvalidArgument(format!("unknown strategy `{other}`"))),
        };
        if nrf.is_some() && !kind.uses_rf_chains() {
            return Err(Error::InvalidArgument(format!(
                "strategy `{name}` does not take an RF chain count"
            )));
        }
        Ok(Strategy { kind, nrf })
    }
}

impl TryFrom<String> for Strategy {
    type Error = Error;

    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<Strategy> for String {
    fn from(s: Strategy) -> String {
        s.to_string()
    }
}

/// Desired-link SNR (shared by both links) and SI SNR, in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LinkBudget {
    pub snr_desired_db: f64,
    pub snr_si_db: f64,
}

impl LinkBudget {
    pub fn snr_desired(&self) -> f64 {
        db_to_linear(self.snr_desired_db)
    }

    pub fn snr_si(&self) -> f64 {
        db_to_linear(self.snr_si_db)
    }
}

/// The three channels of one trial.
#[derive(Debug, Clone)]
pub struct TrialChannels {
    pub h_ki: ChannelMatrix,
    pub h_ij: ChannelMatrix,
    pub h_ii: ChannelMatrix,
}

/// Per-trial, per-SNR result of one strategy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRecord {
    pub strategy: String,
    pub snr_db: f64,
    pub trial: usize,
    pub se_ki: f64,
    pub se_ij: f64,
    pub se_sum: f64,
    pub degenerate: bool,
}

/// Everything needed to evaluate a strategy at any SNR without redoing the design.
#[derive(Debug, Clone)]
pub(crate) enum Prepared {
    SiFree {
        half_duplex: bool,
        precoder_k: CMat,
        combiner_i: CMat,
        precoder_i: CMat,
        combiner_j: CMat,
    },
    Design {
        precoder_k: CMat,
        combiner_i: CMat,
        precoder_i: CMat,
        combiner_j: CMat,
        degenerate: bool,
    },
}

impl Prepared {
    fn from_design(d: BfcDesign) -> Self {
        Prepared::Design {
            combiner_i: d.effective_combiner_i(),
            precoder_i: d.effective_precoder_i(),
            precoder_k: d.precoder_k,
            combiner_j: d.combiner_j,
            degenerate: d.degenerate,
        }
    }

    pub(crate) fn new(
        strategy: Strategy,
        channels: &TrialChannels,
        ns: usize,
        default_nrf: usize,
        codebooks: &CodebookPair,
        phase_bits: Option<u32>,
    ) -> Result<Self> {
        let (h_ki, h_ij, h_ii) = (&channels.h_ki.h, &channels.h_ij.h, &channels.h_ii.h);
        let nrf = strategy.effective_nrf(default_nrf);
        Ok(match strategy.kind {
            StrategyKind::HalfDuplex | StrategyKind::IdealFd => {
                let d = design_eigen_only(h_ki, h_ij, ns)?;
                Prepared::SiFree {
                    half_duplex: strategy.kind == StrategyKind::HalfDuplex,
                    combiner_i: d.effective_combiner_i(),
                    precoder_i: d.effective_precoder_i(),
                    precoder_k: d.precoder_k,
                    combiner_j: d.combiner_j,
                }
            }
            StrategyKind::EigenOnly => Self::from_design(design_eigen_only(h_ki, h_ij, ns)?),
            StrategyKind::EigenOmp => Self::from_design(design_eigen_omp(h_ki, h_ij, ns, nrf, codebooks)?),
            StrategyKind::CaseA => match design_case_a(h_ki, h_ij, h_ii, ns) {
                Ok(d) => {
                    let d = match phase_bits {
                        Some(b) => d.with_quantized_analog(b)?,
                        None => d,
                    };
                    Self::from_design(d)
                }
                // no null space: (i) stays silent toward (j), reception is SI-free
                Err(Error::DesignInfeasible(_)) => Prepared::Design {
                    precoder_k: eigen_precoder(h_ki, ns)?.matrix,
                    combiner_i: eigen_combiner(h_ki, ns)?.matrix,
                    precoder_i: CMat::zeros(h_ij.ncols(), ns),
                    combiner_j: eigen_combiner(h_ij, ns)?.matrix,
                    degenerate: true,
                },
                Err(e) => return Err(e),
            },
            StrategyKind::CaseB => Self::from_design(design_case_b(h_ki, h_ij, h_ii, ns, nrf, codebooks)?),
        })
    }

    /// `(se_ki, se_ij, se_sum, degenerate)` at one SNR point.
    pub(crate) fn rates(&self, channels: &TrialChannels, budget: &LinkBudget) -> Result<(f64, f64, f64, bool)> {
        let snr = budget.snr_desired();
        let (h_ki, h_ij, h_ii) = (&channels.h_ki.h, &channels.h_ij.h, &channels.h_ii.h);
        match self {
            Prepared::SiFree {
                half_duplex,
                precoder_k,
                combiner_i,
                precoder_i,
                combiner_j,
            } => {
                let ki = se_link_no_si(h_ki, precoder_k, combiner_i, snr)?;
                let ij = se_link_no_si(h_ij, precoder_i, combiner_j, snr)?;
                // half duplex: each link gets half of the time
                let share = if *half_duplex { 0.5 } else { 1.0 };
                let (ki, ij) = (share * ki, share * ij);
                Ok((ki, ij, ki + ij, false))
            }
            Prepared::Design {
                precoder_k,
                combiner_i,
                precoder_i,
                combiner_j,
                degenerate,
            } => {
                let ki = se_link_with_si(h_ki, precoder_k, combiner_i, h_ii, precoder_i, snr, budget.snr_si())?;
                let ij = se_link_no_si(h_ij, precoder_i, combiner_j, snr)?;
                Ok((ki, ij, ki + ij, *degenerate))
            }
        }
    }
}

/// Evaluate one strategy on one trial's channels at one SNR point.
#[allow(clippy::too_many_arguments)]
pub fn evaluate_strategy(
    strategy: Strategy,
    channels: &TrialChannels,
    ns: usize,
    nrf: usize,
    codebooks: &CodebookPair,
    budget: &LinkBudget,
    trial: usize,
    phase_bits: Option<u32>,
) -> Result<RateRecord> {
    let prepared = Prepared::new(strategy, channels, ns, nrf, codebooks, phase_bits)?;
    let (se_ki, se_ij, se_sum, degenerate) = prepared.rates(channels, budget)?;
    Ok(RateRecord {
        strategy: strategy.to_string(),
        snr_db: budget.snr_desired_db,
        trial,
        se_ki,
        se_ij,
        se_sum,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        for s in ["hd", "ideal_fd", "eigen_only", "eigen_omp", "case_a", "case_b", "case_b:4", "eigen_omp:6"] {
            let p: Strategy = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        assert_eq!("hd_baseline".parse::<Strategy>().unwrap().kind, StrategyKind::HalfDuplex);
        assert!("case_a:4".parse::<Strategy>().is_err());
        assert!("case_b:0".parse::<Strategy>().is_err());
        assert!("case_c".parse::<Strategy>().is_err());
        assert!("case_b:x".parse::<Strategy>().is_err());
    }
}
