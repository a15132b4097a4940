//! Seeded Monte Carlo sweep over trials and SNR points.
//!
//! Trial `t` draws its channels from a ChaCha8 stream keyed by
//! `(seed, t)`, so results do not depend on how trials are scheduled.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::strategy::{LinkBudget, Prepared, RateRecord, TrialChannels};
use crate::array::dft_codebook;
use crate::beamforming::CodebookPair;
use crate::channel::{compose_si_channel, gen_clustered_channel, gen_los_si_channel, ChannelMatrix, SiGeometry};
use crate::config::ScenarioConfig;
use crate::error::{Error, Result};

/// Per-(strategy, SNR) averages over trials.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanRecord {
    pub strategy: String,
    pub snr_db: f64,
    pub trials: usize,
    pub mean_se_ki: f64,
    pub mean_se_ij: f64,
    pub mean_se_sum: f64,
    pub degenerate: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    /// Ordered by strategy (config order), then SNR (grid order), then trial.
    pub records: Vec<RateRecord>,
    pub means: Vec<MeanRecord>,
}

impl SweepResult {
    pub fn mean(&self, strategy: &str, snr_db: f64) -> Option<&MeanRecord> {
        self.means
            .iter()
            .find(|m| m.strategy == strategy && m.snr_db == snr_db)
    }
}

/// The deterministic LOS part of the SI channel for this scenario.
pub fn los_si_channel(config: &ScenarioConfig) -> Result<ChannelMatrix> {
    let geom = SiGeometry::new(
        config.nt,
        config.nr,
        config.element_spacing,
        config.si_separation_wavelengths,
        config.si_angle,
        config.si_rx_rotation,
    )?;
    gen_los_si_channel(&geom)
}

/// DFT codebooks for the transmit and receive arrays, phase-quantized if requested.
pub fn codebooks_for(config: &ScenarioConfig) -> Result<CodebookPair> {
    let mut tx = dft_codebook(config.nt)?;
    let mut rx = dft_codebook(config.nr)?;
    if let Some(bits) = config.phase_bits {
        tx = tx.quantized(bits)?;
        rx = rx.quantized(bits)?;
    }
    Ok(CodebookPair { tx, rx })
}

/// Channels of trial `trial`: `H_ki`, then `H_ij`, then the NLOS part of `H_ii`.
pub fn draw_trial_channels(config: &ScenarioConfig, los: &ChannelMatrix, trial: usize) -> Result<TrialChannels> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(trial as u64);
    let desired = config.desired_params();
    let h_ki = gen_clustered_channel(&desired, config.nt, config.nr, &mut rng)?;
    let h_ij = gen_clustered_channel(&desired, config.nt, config.nr, &mut rng)?;
    let h_ii = compose_si_channel(config.kappa_db, los, &config.si_nlos_params(), &mut rng)?;
    Ok(TrialChannels { h_ki, h_ij, h_ii })
}

fn run_trial(
    config: &ScenarioConfig,
    los: &ChannelMatrix,
    codebooks: &CodebookPair,
    trial: usize,
) -> Result<Vec<(usize, usize, RateRecord)>> {
    let channels = draw_trial_channels(config, los, trial)?;
    let mut out = Vec::with_capacity(config.strategies.len() * config.snr_db_grid.len());
    for (si, strategy) in config.strategies.iter().enumerate() {
        let prepared = Prepared::new(*strategy, &channels, config.ns, config.nrf, codebooks, config.phase_bits)?;
        let label = strategy.to_string();
        for (pi, &snr_db) in config.snr_db_grid.iter().enumerate() {
            let budget = LinkBudget {
                snr_desired_db: snr_db,
                snr_si_db: config.snr_si_db,
            };
            let (se_ki, se_ij, se_sum, degenerate) = prepared
                .rates(&channels, &budget)
                .map_err(|e| Error::Numerical(format!("trial {trial}, {label} at {snr_db} dB: {e}")))?;
            out.push((
                si,
                pi,
                RateRecord {
                    strategy: label.clone(),
                    snr_db,
                    trial,
                    se_ki,
                    se_ij,
                    se_sum,
                    degenerate,
                },
            ));
        }
    }
    Ok(out)
}

/// Run every strategy at every SNR point for `config.trials` channel draws.
///
/// Channels are drawn once per trial and held fixed across the SNR grid.
pub fn monte_carlo_sweep(config: &ScenarioConfig) -> Result<SweepResult> {
    config.validate()?;
    let los = los_si_channel(config)?;
    let codebooks = codebooks_for(config)?;

    let per_trial: Vec<Result<Vec<(usize, usize, RateRecord)>>> = if config.threads == 1 {
        (0..config.trials)
            .map(|t| run_trial(config, &los, &codebooks, t))
            .collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(config.threads)
            .build()
            .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
        pool.install(|| {
            (0..config.trials)
                .into_par_iter()
                .map(|t| run_trial(config, &los, &codebooks, t))
                .collect()
        })
    };

    let mut keyed = Vec::with_capacity(config.trials * config.strategies.len() * config.snr_db_grid.len());
    for r in per_trial {
        keyed.extend(r?);
    }
    keyed.sort_by_key(|(si, pi, rec)| (*si, *pi, rec.trial));

    let means = keyed
        .chunk_by(|a, b| (a.0, a.1) == (b.0, b.1))
        .map(|group| {
            let n = group.len() as f64;
            let first = &group[0].2;
            MeanRecord {
                strategy: first.strategy.clone(),
                snr_db: first.snr_db,
                trials: group.len(),
                mean_se_ki: group.iter().map(|g| g.2.se_ki).sum::<f64>() / n,
                mean_se_ij: group.iter().map(|g| g.2.se_ij).sum::<f64>() / n,
                mean_se_sum: group.iter().map(|g| g.2.se_sum).sum::<f64>() / n,
                degenerate: group.iter().filter(|g| g.2.degenerate).count(),
            }
        })
        .collect();

    Ok(SweepResult {
        records: keyed.into_iter().map(|(_, _, r)| r).collect(),
        means,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evaluation::{Strategy, StrategyKind};

    fn small(trials: usize, strategies: Vec<Strategy>) -> ScenarioConfig {
        ScenarioConfig {
            nt: 8,
            nr: 8,
            ns: 2,
            nrf: 4,
            trials,
            strategies,
            snr_db_grid: vec![0.0, 10.0],
            ..ScenarioConfig::default()
        }
    }

    #[test]
    fn one_trial_one_point() {
        let mut cfg = small(1, vec![Strategy::new(StrategyKind::CaseA), Strategy::new(StrategyKind::IdealFd)]);
        cfg.snr_db_grid = vec![0.0];
        let r = monte_carlo_sweep(&cfg).unwrap();
        assert_eq!(r.records.len(), 2);
        assert_eq!(r.means.len(), 2);
    }

    #[test]
    fn deterministic_and_thread_independent() {
        let strategies = ["hd", "ideal_fd", "eigen_only", "eigen_omp", "case_a", "case_b:3"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let mut cfg = small(12, strategies);
        cfg.threads = 1;
        let serial = monte_carlo_sweep(&cfg).unwrap();
        cfg.threads = 4;
        let parallel = monte_carlo_sweep(&cfg).unwrap();
        assert_eq!(serial, parallel);
        assert_eq!(serial.records.len(), 12 * 6 * 2);
        assert_eq!(monte_carlo_sweep(&cfg).unwrap(), parallel);
    }

    #[test]
    fn records_sorted_strategy_snr_trial() {
        let cfg = small(3, vec![Strategy::new(StrategyKind::EigenOnly), Strategy::new(StrategyKind::HalfDuplex)]);
        let r = monte_carlo_sweep(&cfg).unwrap();
        let keys: Vec<(String, f64, usize)> = r.records.iter().map(|x| (x.strategy.clone(), x.snr_db, x.trial)).collect();
        assert_eq!(keys[0], ("eigen_only".into(), 0.0, 0));
        assert_eq!(keys[2], ("eigen_only".into(), 0.0, 2));
        assert_eq!(keys[3], ("eigen_only".into(), 10.0, 0));
        assert_eq!(keys[6], ("hd".into(), 0.0, 0));
    }

    #[test]
    fn trial_channels_independent_of_trial_count() {
        let cfg = small(5, vec![Strategy::new(StrategyKind::IdealFd)]);
        let los = los_si_channel(&cfg).unwrap();
        let a = draw_trial_channels(&cfg, &los, 3).unwrap();
        let b = draw_trial_channels(&cfg, &los, 3).unwrap();
        let c = draw_trial_channels(&cfg, &los, 4).unwrap();
        assert_eq!(a.h_ki, b.h_ki);
        assert_ne!(a.h_ki.h, c.h_ki.h);
    }

    #[test]
    fn ideal_dominates_hd_and_designs() {
        let strategies = ["hd", "ideal_fd", "case_a", "case_b:4"].iter().map(|s| s.parse().unwrap()).collect();
        let cfg = small(20, strategies);
        let r = monte_carlo_sweep(&cfg).unwrap();
        let get = |s: &str, snr: f64, t: usize| {
            r.records
                .iter()
                .find(|x| x.strategy == s && x.snr_db == snr && x.trial == t)
                .unwrap()
                .se_sum
        };
        for t in 0..20 {
            for snr in [0.0, 10.0] {
                let ideal = get("ideal_fd", snr, t);
                assert!(get("hd", snr, t) <= ideal + 1e-12);
                assert!(get("case_a", snr, t) <= ideal + 1e-9);
                assert!(get("case_b:4", snr, t) <= ideal + 1e-9);
            }
        }
    }
}
