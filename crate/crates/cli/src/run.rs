use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use mmfd_core::evaluation::{draw_trial_channels, los_si_channel};
use mmfd_core::report::{summary_table, write_means, write_records, write_trial_channels};
use mmfd_core::{monte_carlo_sweep, Error, OutputFormat, Result, ScenarioConfig};

/// `results.csv` -> `results.means.csv`
pub fn means_path(out: &Path, format: OutputFormat) -> PathBuf {
    let stem = out.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    out.with_file_name(format!("{stem}.means.{format}"))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    let f = File::create(path)
        .map_err(|e| Error::Io(io::Error::new(e.kind(), format!("{}: {e}", path.display()))))?;
    Ok(BufWriter::new(f))
}

fn dump_channels(cfg: &ScenarioConfig, path: &Path) -> Result<()> {
    let los = los_si_channel(cfg)?;
    let mut out = create(path)?;
    for trial in 0..cfg.trials {
        write_trial_channels(&mut out, trial, &draw_trial_channels(cfg, &los, trial)?)?;
    }
    out.flush()?;
    Ok(())
}

/// Run the sweep and write everything the config asks for. Without an output
/// path the records go to stdout and the summary table to stderr.
pub fn run(cfg: &ScenarioConfig) -> Result<()> {
    let result = monte_carlo_sweep(cfg)?;
    if let Some(path) = &cfg.dump_channels {
        dump_channels(cfg, path)?;
    }
    let table = summary_table(&result.means);
    match &cfg.output_path {
        Some(path) => {
            let mut out = create(path)?;
            write_records(&mut out, &result.records, cfg.output_format)?;
            out.flush()?;
            let mut out = create(&means_path(path, cfg.output_format))?;
            write_means(&mut out, &result.means, cfg.output_format)?;
            out.flush()?;
            print!("{table}");
        }
        None => {
            let stdout = io::stdout();
            let mut out = stdout.lock();
            write_records(&mut out, &result.records, cfg.output_format)?;
            out.flush()?;
            eprint!("{table}");
        }
    }
    Ok(())
}
