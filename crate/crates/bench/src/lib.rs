//! Shared fixtures for the criterion benches.

use mmfd_core::evaluation::{codebooks_for, draw_trial_channels, los_si_channel};
use mmfd_core::{CodebookPair, ScenarioConfig, TrialChannels};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub struct Fixture {
    pub config: ScenarioConfig,
    pub channels: TrialChannels,
    pub codebooks: CodebookPair,
}

/// Default scenario resized to `n` antennas per array, with the channels of trial 0.
pub fn fixture(n: usize) -> Fixture {
    let config = ScenarioConfig { nt: n, nr: n, ..ScenarioConfig::default() };
    let los = los_si_channel(&config).expect("LOS SI channel");
    let channels = draw_trial_channels(&config, &los, 0).expect("trial channels");
    let codebooks = codebooks_for(&config).expect("codebooks");
    Fixture { config, channels, codebooks }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
