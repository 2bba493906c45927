use std::io::{BufRead, Write};

use num_complex::Complex64;

use super::{GridSpec, LatticeField};
use crate::error::{Error, Result};

const HEADER: &str = "# x re_u1 im_u1 re_u2 im_u2";

/// Writes one row `x Re u₁ Im u₁ Re u₂ Im u₂` per site, in increasing `x`.
pub fn write_snapshot<W: Write>(field: &LatticeField, mut out: W) -> Result<()> {
    let g = field.grid();
    let half = g.points() / 2;
    writeln!(out, "{HEADER}")?;
    for n in (half..g.points()).chain(0..half) {
        let v = field.get(n);
        writeln!(
            out,
            "{:e} {:e} {:e} {:e} {:e}",
            g.position(n),
            v[0].re,
            v[0].im,
            v[1].re,
            v[1].im
        )?;
    }
    Ok(())
}

/// Parses the format written by [`write_snapshot`]; the grid is recovered
/// from the row count and the first two coordinates.
pub fn read_snapshot<R: BufRead>(input: R) -> Result<LatticeField> {
    let mut rows: Vec<[f64; 5]> = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let vals: Vec<f64> = line
            .split_whitespace()
            .map(|t| t.parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Snapshot { line: i + 1, reason: e.to_string() })?;
        let row: [f64; 5] = vals.try_into().map_err(|v: Vec<f64>| Error::Snapshot {
            line: i + 1,
            reason: format!("expected 5 columns, found {}", v.len()),
        })?;
        rows.push(row);
    }
    if rows.len() < 2 {
        return Err(Error::Snapshot { line: 0, reason: "need at least two rows".into() });
    }
    let spacing = rows[1][0] - rows[0][0];
    let grid = GridSpec::new(spacing, rows.len())?;
    let mut field = LatticeField::zeros(grid);
    let n = grid.points() as i64;
    for row in &rows {
        let site = (row[0] / spacing).round() as i64;
        field.set(
            site.rem_euclid(n) as usize,
            [Complex64::new(row[1], row[2]), Complex64::new(row[3], row[4])],
        );
    }
    Ok(field)
}
