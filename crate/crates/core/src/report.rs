//! Serialization of sweep results and channel dumps.
//!
//! Per-trial CSV columns: `strategy,snr_db,trial,se_ki,se_ij,se_sum,degenerate`.
//! Means CSV columns: `strategy,snr_db,trials,mean_se_ki,mean_se_ij,mean_se_sum,degenerate`.
//! JSON output is an array of objects with the same keys.
//!
//! Channel dumps are CSV with one row per matrix:
//! `trial,kind,rows,cols,re_0,im_0,re_1,im_1,...` in row-major order.

use std::io::Write;

use serde::Serialize;

use crate::channel::ChannelMatrix;
use crate::config::OutputFormat;
use crate::error::{Error, Result};
use crate::evaluation::{MeanRecord, RateRecord, TrialChannels};

fn write_csv_rows<W: Write, T: Serialize>(out: W, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for r in rows {
        w.serialize(r).map_err(|e| Error::Serialize(e.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

fn write_json_rows<W: Write, T: Serialize>(mut out: W, rows: &[T]) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows).map_err(|e| Error::Serialize(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn write_rows<W: Write, T: Serialize>(out: W, rows: &[T], format: OutputFormat) -> Result<()> {
    match format {
        OutputFormat::Csv => write_csv_rows(out, rows),
        OutputFormat::Json => write_json_rows(out, rows),
    }
}

pub fn write_records<W: Write>(out: W, records: &[RateRecord], format: OutputFormat) -> Result<()> {
    if records.is_empty() && format == OutputFormat::Csv {
        let mut out = out;
        writeln!(out, "strategy,snr_db,trial,se_ki,se_ij,se_sum,degenerate")?;
        return Ok(());
    }
    write_rows(out, records, format)
}

pub fn write_means<W: Write>(out: W, means: &[MeanRecord], format: OutputFormat) -> Result<()> {
    write_rows(out, means, format)
}

pub fn write_channel_row<W: Write>(out: &mut W, trial: usize, ch: &ChannelMatrix) -> Result<()> {
    write!(out, "{trial},{},{},{}", ch.kind.as_str(), ch.nr(), ch.nt())?;
    for r in 0..ch.nr() {
        for c in 0..ch.nt() {
            let z = ch.h[(r, c)];
            write!(out, ",{},{}", z.re, z.im)?;
        }
    }
    writeln!(out)?;
    Ok(())
}

/// Write `H_ki`, `H_ij` and `H_ii` of one trial.
pub fn write_trial_channels<W: Write>(out: &mut W, trial: usize, ch: &TrialChannels) -> Result<()> {
    for m in [&ch.h_ki, &ch.h_ij, &ch.h_ii] {
        write_channel_row(out, trial, m)?;
    }
    Ok(())
}

/// Strategy x SNR table of mean sum spectral efficiency.
pub fn summary_table(means: &[MeanRecord]) -> String {
    let mut snrs: Vec<f64> = Vec::new();
    let mut strategies: Vec<&str> = Vec::new();
    for m in means {
        if !snrs.contains(&m.snr_db) {
            snrs.push(m.snr_db);
        }
        if !strategies.contains(&m.strategy.as_str()) {
            strategies.push(&m.strategy);
        }
    }
    let width = strategies.iter().map(|s| s.len()).max().unwrap_or(8).max(8);
    let mut s = format!("{:<width$}", "SNR (dB)");
    for snr in &snrs {
        s.push_str(&format!(" {snr:>8}"));
    }
    s.push('\n');
    for name in strategies {
        s.push_str(&format!("{name:<width$}"));
        for snr in &snrs {
            match means.iter().find(|m| m.strategy == name && m.snr_db == *snr) {
                Some(m) => s.push_str(&format!(" {:>8.3}", m.mean_se_sum)),
                None => s.push_str(&format!(" {:>8}", "-")),
            }
        }
        s.push('\n');
    }
    s
}
