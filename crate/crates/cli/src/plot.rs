//! Columnar exports for external plotting.

use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::report::{fmt, PlotKind, SuiteReport};

/// Bin edges of the margin histogram, in decades.
const DECADES: std::ops::RangeInclusive<i32> = -16..=1;

/// Rows of the requested plot, headed by its column names.
pub fn plot_table(report: &SuiteReport, kind: PlotKind) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    if kind == PlotKind::MarginHistogram {
        return margin_histogram(report);
    }
    let series: Vec<_> = report.series.iter().filter(|s| s.kind == kind).collect();
    let Some(first) = series.first() else {
        return Err(CliError::PlotMismatch {
            kind: kind.name().into(),
        });
    };
    let mut header = vec!["label".to_string()];
    header.extend(first.columns.iter().cloned());
    let rows = series
        .iter()
        .flat_map(|s| {
            s.rows.iter().map(|row| {
                let mut out = vec![s.label.clone()];
                out.extend(row.iter().map(|&x| fmt(x)));
                out
            })
        })
        .collect();
    Ok((header, rows))
}

/// Counts of positive margins per decade; non-positive margins land in the first row.
fn margin_histogram(report: &SuiteReport) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    if report.cases.is_empty() {
        return Err(CliError::PlotMismatch {
            kind: PlotKind::MarginHistogram.name().into(),
        });
    }
    let lo = *DECADES.start();
    let bins = (DECADES.end() - lo + 1) as usize;
    let mut counts = vec![(0usize, 0usize); bins + 1];
    for c in &report.cases {
        let slot = if c.margin > 0.0 {
            1 + (c.margin.log10().floor() as i32 - lo).clamp(0, bins as i32 - 1) as usize
        } else {
            0
        };
        counts[slot].0 += 1;
        counts[slot].1 += usize::from(!c.pass);
    }
    let header = ["log10_margin_lo", "log10_margin_hi", "count", "failures"]
        .map(String::from)
        .to_vec();
    let rows = counts
        .iter()
        .enumerate()
        .map(|(slot, &(count, failures))| {
            let (a, b) = if slot == 0 {
                (f64::NEG_INFINITY, f64::NEG_INFINITY)
            } else {
                let a = (lo + slot as i32 - 1) as f64;
                (a, a + 1.0)
            };
            vec![fmt(a), fmt(b), count.to_string(), failures.to_string()]
        })
        .collect();
    Ok((header, rows))
}

/// Writes `<dir>/<kind>.csv` and returns its path.
pub fn emit_plotdata(report: &SuiteReport, kind: PlotKind, dir: &Path) -> Result<PathBuf> {
    let (header, rows) = plot_table(report, kind)?;
    std::fs::create_dir_all(dir).map_err(|source| CliError::Write {
        path: dir.to_path_buf(),
        source,
    })?;
    let path = dir.join(format!("{}.csv", kind.name()));
    let io = |e: csv::Error| CliError::Write {
        path: path.clone(),
        source: e.into(),
    };
    let mut w = csv::Writer::from_path(&path).map_err(io)?;
    w.write_record(&header).map_err(io)?;
    for row in rows {
        w.write_record(&row).map_err(io)?;
    }
    w.flush().map_err(|source| CliError::Write {
        path: path.clone(),
        source,
    })?;
    Ok(path)
}
