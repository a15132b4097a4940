//! Beamforming cancellation (BFC) for millimeter-wave full-duplex nodes with
//! fully-connected hybrid beamforming.
//!
//! A full-duplex node `(i)` transmits to a half-duplex node `(j)` while
//! receiving from a half-duplex node `(k)` in the same band. Its own
//! transmission leaks into its receive array through the self-interference
//! (SI) channel `H_ii`. The designs in [`beamforming`] steer the precoder at
//! `(i)` into the null space of the SI channel as seen by its combiner, so
//! that reception from `(k)` is left untouched:
//!
//! * **Case A** (`Nrf = 2Ns`, ideal phase shifters): project the eigen-precoder
//!   onto the null space of `W^H H_ii`, then decompose it exactly into a
//!   constant-amplitude analog stage and a digital stage.
//! * **Case B** (`Ns <= Nrf < 2Ns`, codebook-constrained analog beams): run
//!   OMP against a DFT codebook, fix the analog precoder and project only the
//!   digital precoder.
//!
//! [`evaluation`] turns designs into spectral efficiencies and runs seeded
//! Monte Carlo sweeps; [`report`] serializes the results.

pub mod array;
pub mod beamforming;
pub mod channel;
pub mod config;
pub mod error;
pub mod evaluation;
pub mod linalg;
pub mod report;

pub use array::{dft_codebook, quantize_phases, steering_vector, AnalogCodebook, UlaGeometry};
pub use beamforming::{
    design_case_a, design_case_b, eigen_combiner, eigen_precoder, exact_hybrid_decomposition,
    null_space_basis, omp_hybrid_approx, project_onto, BfcDesign, CodebookPair, DesignCase,
    HybridBeamformer,
};
pub use channel::{
    gen_clustered_channel, gen_los_si_channel, gen_si_channel, sample_laplacian, ChannelKind,
    ChannelMatrix, ClusteredChannelParams, IntRange, SiGeometry,
};
pub use config::{OutputFormat, ScenarioConfig};
pub use error::{Error, Result};
pub use evaluation::{
    evaluate_strategy, monte_carlo_sweep, se_link_no_si, se_link_with_si, LinkBudget, RateRecord,
    MeanRecord, Strategy, StrategyKind, SweepResult, TrialChannels,
};
pub use linalg::CMat;
