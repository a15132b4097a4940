//! Scenario configuration: defaults, figure presets, TOML load/save and validation.

use std::f64::consts::PI;
use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::channel::{ClusteredChannelParams, IntRange};
use crate::error::{Error, Result};
use crate::evaluation::{Strategy, StrategyKind};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(Error::config("output_format", format!("unknown format `{other}`"))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        })
    }
}

/// A complete Monte Carlo scenario. Every omitted field takes its default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ScenarioConfig {
    pub nt: usize,
    pub nr: usize,
    pub ns: usize,
    /// RF chains at each array of the full-duplex node (strategies may override).
    pub nrf: usize,
    pub strategies: Vec<Strategy>,
    pub snr_db_grid: Vec<f64>,
    pub snr_si_db: f64,
    pub kappa_db: f64,
    pub element_spacing: f64,
    pub si_separation_wavelengths: f64,
    /// Bearing of the receive array center from the transmit array axis.
    pub si_angle: f64,
    /// Rotation of the receive array axis.
    pub si_rx_rotation: f64,
    pub desired_clusters: IntRange,
    pub desired_rays: IntRange,
    pub si_nlos_clusters: IntRange,
    pub si_nlos_rays: IntRange,
    pub angular_std: f64,
    pub trials: usize,
    #[serde(with = "seed_repr")]
    pub seed: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phase_bits: Option<u32>,
    /// Worker threads for the sweep, 0 picks the machine default.
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output_path: Option<PathBuf>,
    pub output_format: OutputFormat,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump_channels: Option<PathBuf>,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            nt: 16,
            nr: 16,
            ns: 3,
            nrf: 6,
            strategies: vec![
                Strategy::new(StrategyKind::HalfDuplex),
                Strategy::new(StrategyKind::EigenOnly),
                Strategy::new(StrategyKind::CaseA),
                Strategy::new(StrategyKind::IdealFd),
            ],
            snr_db_grid: snr_grid(-10.0, 20.0, 5.0).expect("valid default grid"),
            snr_si_db: 120.0,
            kappa_db: 30.0,
            element_spacing: 0.5,
            si_separation_wavelengths: 10.0,
            si_angle: PI / 6.0,
            si_rx_rotation: PI / 6.0,
            desired_clusters: IntRange::new(1, 6),
            desired_rays: IntRange::new(1, 10),
            si_nlos_clusters: IntRange::new(1, 3),
            si_nlos_rays: IntRange::new(1, 3),
            angular_std: 0.2,
            trials: 100,
            seed: 1,
            phase_bits: None,
            threads: 0,
            output_path: None,
            output_format: OutputFormat::Csv,
            dump_channels: None,
        }
    }
}

/// Inclusive arithmetic grid `start, start + step, ...` up to `stop`.
pub fn snr_grid(start: f64, stop: f64, step: f64) -> Result<Vec<f64>> {
    if !(start.is_finite() && stop.is_finite() && step.is_finite()) {
        return Err(Error::config("snr_db_grid", "start, stop and step must be finite"));
    }
    if stop < start {
        return Err(Error::config("snr_db_grid", format!("stop {stop} is below start {start}")));
    }
    if step <= 0.0 {
        return Err(Error::config("snr_db_grid", format!("step must be positive, got {step}")));
    }
    let n = ((stop - start) / step + 1e-9).floor() as usize + 1;
    if n > 100_000 {
        return Err(Error::config("snr_db_grid", format!("{n} grid points is too many")));
    }
    Ok((0..n).map(|k| start + k as f64 * step).collect())
}

impl ScenarioConfig {
    /// Published figure setups: `fig2`/`fig3` compare Case A at 16/64
    /// antennas, `fig4`/`fig5` sweep Case B RF chains at 16/64 antennas.
    pub fn preset(name: &str) -> Result<Self> {
        let base = ScenarioConfig::default();
        let case_b_sweep = {
            let mut s = vec![
                Strategy::new(StrategyKind::HalfDuplex),
                Strategy::with_nrf(StrategyKind::EigenOmp, 6),
            ];
            s.extend((3..=6).map(|n| Strategy::with_nrf(StrategyKind::CaseB, n)));
            s.push(Strategy::new(StrategyKind::IdealFd));
            s
        };
        Ok(match name {
            "fig2" => base,
            "fig3" => ScenarioConfig { nt: 64, nr: 64, ..base },
            "fig4" => ScenarioConfig {
                strategies: case_b_sweep,
                ..base
            },
            "fig5" => ScenarioConfig {
                nt: 64,
                nr: 64,
                strategies: case_b_sweep,
                ..base
            },
            other => return Err(Error::config("preset", format!("unknown preset `{other}`"))),
        })
    }

    pub fn desired_params(&self) -> ClusteredChannelParams {
        ClusteredChannelParams {
            clusters: self.desired_clusters,
            rays: self.desired_rays,
            angle_mean_range: (0.0, PI),
            angular_std: self.angular_std,
        }
    }

    pub fn si_nlos_params(&self) -> ClusteredChannelParams {
        ClusteredChannelParams {
            clusters: self.si_nlos_clusters,
            rays: self.si_nlos_rays,
            angle_mean_range: (0.0, PI),
            angular_std: self.angular_std,
        }
    }

    pub fn validate(&self) -> Result<()> {
        for (field, v) in [("nt", self.nt), ("nr", self.nr), ("ns", self.ns), ("nrf", self.nrf)] {
            if v == 0 {
                return Err(Error::config(field, "must be a positive integer"));
            }
        }
        if self.ns > self.nt.min(self.nr) {
            return Err(Error::config(
                "ns",
                format!("violates ns ≤ min(nt,nr): ns = {}, nt = {}, nr = {}", self.ns, self.nt, self.nr),
            ));
        }
        if self.strategies.is_empty() {
            return Err(Error::config("strategies", "at least one strategy is required"));
        }
        for s in &self.strategies {
            if s.kind.uses_rf_chains() && s.effective_nrf(self.nrf) < self.ns {
                return Err(Error::config(
                    "nrf",
                    format!("strategy {s} needs nrf ≥ ns, got nrf = {}", s.effective_nrf(self.nrf)),
                ));
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(dup) = self.strategies.iter().find(|s| !seen.insert(s.to_string())) {
            return Err(Error::config("strategies", format!("duplicate strategy {dup}")));
        }
        if self.snr_db_grid.is_empty() {
            return Err(Error::config("snr_db_grid", "grid must be nonempty"));
        }
        if self.snr_db_grid.iter().any(|x| !x.is_finite()) {
            return Err(Error::config("snr_db_grid", "grid values must be finite"));
        }
        if !self.snr_si_db.is_finite() {
            return Err(Error::config("snr_si_db", "must be finite"));
        }
        if self.kappa_db.is_nan() {
            return Err(Error::config("kappa_db", "must not be NaN"));
        }
        if !(self.element_spacing > 0.0 && self.element_spacing.is_finite()) {
            return Err(Error::config("element_spacing", "must be positive"));
        }
        if !(self.si_separation_wavelengths > 0.0 && self.si_separation_wavelengths.is_finite()) {
            return Err(Error::config("si_separation_wavelengths", "must be positive"));
        }
        if !(self.si_angle.is_finite() && self.si_rx_rotation.is_finite()) {
            return Err(Error::config("si_angle", "angles must be finite"));
        }
        for (field, r) in [
            ("desired_clusters", self.desired_clusters),
            ("desired_rays", self.desired_rays),
            ("si_nlos_clusters", self.si_nlos_clusters),
            ("si_nlos_rays", self.si_nlos_rays),
        ] {
            if r.min < 1 || r.min > r.max {
                return Err(Error::config(field, format!("need 1 ≤ min ≤ max, got [{}, {}]", r.min, r.max)));
            }
        }
        if !(self.angular_std > 0.0 && self.angular_std.is_finite()) {
            return Err(Error::config("angular_std", "must be positive"));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if let Some(b) = self.phase_bits {
            if b == 0 || b > 52 {
                return Err(Error::config("phase_bits", "must be between 1 and 52"));
            }
        }
        Ok(())
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        let cfg: ScenarioConfig = toml::from_str(text).map_err(|e| Error::ConfigParse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_toml_string(&self) -> Result<String> {
        toml::to_string(self).map_err(|e| Error::Serialize(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        Self::from_toml_str(&text)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_toml_string()?)?;
        Ok(())
    }
}

/// Seeds above `i64::MAX` do not fit a TOML integer and are written as strings.
mod seed_repr {
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(seed: &u64, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(*seed) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&seed.to_string()),
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<u64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(v) => u64::try_from(v).map_err(|_| de::Error::custom("seed must be non-negative")),
            Repr::Text(t) => t.parse().map_err(de::Error::custom),
        }
    }
}
