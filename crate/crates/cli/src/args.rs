use std::path::PathBuf;

use clap::Parser;
use mmfd_core::config::snr_grid;
use mmfd_core::{Result, ScenarioConfig, Strategy};

/// Monte Carlo simulator for beamforming cancellation at mmWave full-duplex nodes.
///
/// The scenario starts from the built-in defaults, a preset, or a TOML config
/// file; any flag given on the command line overrides that base.
#[derive(Debug, Parser)]
#[command(name = "mmfd", version)]
pub struct Args {
    /// TOML scenario file
    #[arg(long, value_name = "PATH", conflicts_with = "preset")]
    pub config: Option<PathBuf>,

    /// Built-in figure setup
    #[arg(long, value_parser = ["fig2", "fig3", "fig4", "fig5"])]
    pub preset: Option<String>,

    /// Transmit antennas per node
    #[arg(long, value_name = "N")]
    pub nt: Option<usize>,

    /// Receive antennas per node
    #[arg(long, value_name = "N")]
    pub nr: Option<usize>,

    /// Data streams per link
    #[arg(long, value_name = "N")]
    pub ns: Option<usize>,

    /// RF chains at the full-duplex node (default for strategies without `:N`)
    #[arg(long, value_name = "N")]
    pub nrf: Option<usize>,

    /// Single SNR point in dB (shorthand for a one-point grid)
    #[arg(long, value_name = "DB", allow_negative_numbers = true,
          conflicts_with_all = ["snr_start", "snr_stop", "snr_step"])]
    pub snr: Option<f64>,

    /// First SNR of the grid in dB
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub snr_start: Option<f64>,

    /// Last SNR of the grid in dB (inclusive)
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub snr_stop: Option<f64>,

    /// SNR grid step in dB
    #[arg(long, value_name = "DB")]
    pub snr_step: Option<f64>,

    /// Self-interference SNR in dB
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub snr_si: Option<f64>,

    /// Rician factor of the SI channel in dB (`inf` for pure LOS)
    #[arg(long, value_name = "DB", allow_negative_numbers = true)]
    pub kappa: Option<f64>,

    #[arg(long, value_name = "N")]
    pub trials: Option<usize>,

    #[arg(long, value_name = "U64")]
    pub seed: Option<u64>,

    /// Comma-separated strategies, e.g. `hd,eigen_only,case_b:4,ideal_fd`
    #[arg(long, value_name = "LIST", value_delimiter = ',')]
    pub strategies: Option<Vec<Strategy>>,

    /// Quantize analog phases to this many bits
    #[arg(long, value_name = "N")]
    pub phase_bits: Option<u32>,

    /// Worker threads (0 = all cores)
    #[arg(long, value_name = "N")]
    pub threads: Option<usize>,

    /// Write the per-trial channel matrices to this CSV file
    #[arg(long, value_name = "PATH")]
    pub dump_channels: Option<PathBuf>,

    /// Per-trial records file; means go next to it as `<stem>.means.<ext>`
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,

    #[arg(long, value_parser = ["csv", "json"])]
    pub format: Option<String>,
}

impl Args {
    /// Base scenario with every command-line override applied, validated.
    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let mut cfg = match (&self.config, &self.preset) {
            (Some(path), _) => ScenarioConfig::load(path)?,
            (None, Some(name)) => ScenarioConfig::preset(name)?,
            (None, None) => ScenarioConfig::default(),
        };
        macro_rules! set {
            ($($flag:ident => $field:ident),* $(,)?) => {
                $(if let Some(v) = &self.$flag { cfg.$field = v.clone(); })*
            };
        }
        set!(nt => nt, nr => nr, ns => ns, nrf => nrf, snr_si => snr_si_db, kappa => kappa_db,
             trials => trials, seed => seed, strategies => strategies, threads => threads);
        if let Some(b) = self.phase_bits {
            cfg.phase_bits = Some(b);
        }
        if let Some(p) = &self.dump_channels {
            cfg.dump_channels = Some(p.clone());
        }
        if let Some(p) = &self.out {
            cfg.output_path = Some(p.clone());
        }
        if let Some(f) = &self.format {
            cfg.output_format = f.parse()?;
        }
        if let Some(snr) = self.snr {
            cfg.snr_db_grid = vec![snr];
        } else if self.snr_start.is_some() || self.snr_stop.is_some() || self.snr_step.is_some() {
            let grid = &cfg.snr_db_grid;
            let start = self.snr_start.unwrap_or(grid[0]);
            let stop = self.snr_stop.unwrap_or(*grid.last().unwrap_or(&start));
            let step = self.snr_step.unwrap_or(if grid.len() > 1 { grid[1] - grid[0] } else { 1.0 });
            cfg.snr_db_grid = snr_grid(start, stop, step)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use mmfd_core::OutputFormat;

    fn parse(args: &[&str]) -> Args {
        Args::try_parse_from(std::iter::once("mmfd").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn no_flags_is_default_scenario() {
        assert_eq!(parse(&[]).scenario().unwrap(), ScenarioConfig::default());
    }

    #[test]
    fn flags_override_preset() {
        let cfg = parse(&["--preset", "fig3", "--trials", "7", "--format", "json", "--kappa", "-3"])
            .scenario()
            .unwrap();
        assert_eq!((cfg.nt, cfg.trials, cfg.kappa_db), (64, 7, -3.0));
        assert_eq!(cfg.output_format, OutputFormat::Json);
    }

    #[test]
    fn partial_grid_override_keeps_the_rest() {
        let cfg = parse(&["--snr-start", "0"]).scenario().unwrap();
        assert_eq!(cfg.snr_db_grid, vec![0.0, 5.0, 10.0, 15.0, 20.0]);
        let cfg = parse(&["--snr-start", "-2", "--snr-stop", "2", "--snr-step", "2"]).scenario().unwrap();
        assert_eq!(cfg.snr_db_grid, vec![-2.0, 0.0, 2.0]);
    }

    #[test]
    fn strategy_list_with_rf_suffix() {
        let cfg = parse(&["--strategies", "hd,case_b:4,ideal_fd"]).scenario().unwrap();
        let names: Vec<String> = cfg.strategies.iter().map(|s| s.to_string()).collect();
        assert_eq!(names, ["hd", "case_b:4", "ideal_fd"]);
    }

    #[test]
    fn single_snr_conflicts_with_grid() {
        assert!(Args::try_parse_from(["mmfd", "--snr", "0", "--snr-step", "1"]).is_err());
    }
}
