use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};

use super::config::{ExperimentConfig, ReportFormat};
use super::convergence::{ConvergenceReport, ConvergenceRow, GateStatus};
use super::invariants::InvariantReport;

pub const CSV_HEADER: [&str; 4] = ["delta", "steps", "sup_error_hs", "walltime_s"];
pub const CONVERGENCE_CSV: &str = "convergence.csv";
pub const CONVERGENCE_JSON: &str = "summary.json";
pub const INVARIANTS_CSV: &str = "invariants.csv";
pub const INVARIANTS_JSON: &str = "invariants.json";

pub fn write_csv<W: Write>(rows: &[ConvergenceRow], out: W) -> Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<ConvergenceRow>> {
    let mut r = csv::Reader::from_reader(input);
    if r.headers()?.iter().ne(CSV_HEADER) {
        return Err(Error::Config(format!("unexpected CSV header, expected `{}`", CSV_HEADER.join(","))));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

#[derive(Serialize)]
struct Summary<'a> {
    preset: &'a str,
    slope: Option<f64>,
    intercept: Option<f64>,
    residual: Option<f64>,
    rows_used: usize,
    gate: &'a GateStatus,
    worst_steps: &'a [usize],
    reference_walltime_s: f64,
    warnings: &'a [String],
    config: &'a ExperimentConfig,
}

pub fn summary_json(report: &ConvergenceReport) -> Result<String> {
    let fit = report.fit.as_ref();
    Ok(serde_json::to_string_pretty(&Summary {
        preset: report.config.preset.name(),
        slope: fit.map(|f| f.slope),
        intercept: fit.map(|f| f.intercept),
        residual: fit.map(|f| f.residual),
        rows_used: fit.map_or(0, |f| f.rows_used),
        gate: &report.gate,
        worst_steps: &report.worst_steps,
        reference_walltime_s: report.reference_walltime_s,
        warnings: &report.warnings,
        config: &report.config,
    })?)
}

fn create(path: &Path) -> Result<std::io::BufWriter<std::fs::File>> {
    std::fs::File::create(path)
        .map(std::io::BufWriter::new)
        .map_err(|source| Error::Write { path: path.to_path_buf(), source })
}

fn prepare(dir: &Path) -> Result<()> {
    std::fs::create_dir_all(dir).map_err(|source| Error::Write { path: dir.to_path_buf(), source })
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    let mut f = create(path)?;
    f.write_all(text.as_bytes())
        .and_then(|_| f.write_all(b"\n"))
        .and_then(|_| f.flush())
        .map_err(|source| Error::Write { path: path.to_path_buf(), source })
}

/// Writes `convergence.csv` and/or `summary.json` into `dir`, returning the paths written.
pub fn emit_report(report: &ConvergenceReport, format: ReportFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    prepare(dir)?;
    let mut written = Vec::new();
    if matches!(format, ReportFormat::Csv | ReportFormat::Both) {
        let path = dir.join(CONVERGENCE_CSV);
        write_csv(&report.rows, create(&path)?)?;
        written.push(path);
    }
    if matches!(format, ReportFormat::Json | ReportFormat::Both) {
        let path = dir.join(CONVERGENCE_JSON);
        write_text(&path, &summary_json(report)?)?;
        written.push(path);
    }
    Ok(written)
}

/// Writes `invariants.csv` and/or `invariants.json` into `dir`.
pub fn emit_invariants(report: &InvariantReport, format: ReportFormat, dir: &Path) -> Result<Vec<PathBuf>> {
    prepare(dir)?;
    let mut written = Vec::new();
    if matches!(format, ReportFormat::Csv | ReportFormat::Both) {
        let path = dir.join(INVARIANTS_CSV);
        let mut w = csv::Writer::from_writer(create(&path)?);
        for check in &report.checks {
            w.serialize(check)?;
        }
        w.flush()?;
        written.push(path);
    }
    if matches!(format, ReportFormat::Json | ReportFormat::Both) {
        let path = dir.join(INVARIANTS_JSON);
        write_text(&path, &serde_json::to_string_pretty(report)?)?;
        written.push(path);
    }
    Ok(written)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(delta: f64, err: f64) -> ConvergenceRow {
        ConvergenceRow { delta, steps: (1.0 / delta) as usize, sup_error_hs: err, walltime_s: 0.25 }
    }

    #[test]
    fn empty_table_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "delta,steps,sup_error_hs,walltime_s\n");
    }

    #[test]
    fn csv_round_trip() {
        let rows = vec![row(0.0625, 0.1234567890123), row(0.03125, 6.1e-17)];
        let mut buf = Vec::new();
        write_csv(&rows, &mut buf).unwrap();
        assert_eq!(String::from_utf8_lossy(&buf).lines().count(), 3);
        assert_eq!(read_csv(buf.as_slice()).unwrap(), rows);
    }

    #[test]
    fn wrong_header_is_rejected() {
        assert!(read_csv("delta,steps,error,walltime_s\n".as_bytes()).is_err());
    }
}
