//! Spectral-efficiency evaluation and Monte Carlo sweeps.

mod rate;
mod strategy;
mod sweep;

pub use rate::{db_to_linear, se_link_no_si, se_link_with_si};
pub use strategy::{evaluate_strategy, LinkBudget, RateRecord, Strategy, StrategyKind, TrialChannels};
pub use sweep::{codebooks_for, draw_trial_channels, monte_carlo_sweep, los_si_channel, MeanRecord, SweepResult};
