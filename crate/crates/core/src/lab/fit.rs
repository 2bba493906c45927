use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Least-squares line through `(ln δ, ln error)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit, in log units.
    pub residual: f64,
    pub rows_used: usize,
}

/// Fits `ln error = slope·ln δ + intercept` over the rows with positive,
/// finite values; other rows are skipped with a warning.
pub fn fit_rate(rows: &[(f64, f64)]) -> Result<RateFit> {
    let mut points = Vec::with_capacity(rows.len());
    for &(delta, error) in rows {
        if delta > 0.0 && error > 0.0 && delta.is_finite() && error.is_finite() {
            points.push((delta.ln(), error.ln()));
        } else {
            log::warn!("excluding row (delta = {delta}, error = {error}) from the rate fit");
        }
    }
    let n = points.len();
    if n < 3 {
        return Err(Error::InsufficientData(n));
    }
    let nf = n as f64;
    let mx = points.iter().map(|p| p.0).sum::<f64>() / nf;
    let my = points.iter().map(|p| p.1).sum::<f64>() / nf;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData(1));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual = (points.iter().map(|p| (p.1 - slope * p.0 - intercept).powi(2)).sum::<f64>() / nf).sqrt();
    Ok(RateFit { slope, intercept, residual, rows_used: n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rows(c: f64, p: i32) -> Vec<(f64, f64)> {
        (3..9).map(|k| 2f64.powi(-k)).map(|d| (d, c * d.powi(p))).collect()
    }

    #[test]
    fn exact_power_laws() {
        let f = fit_rate(&rows(0.7, 1)).unwrap();
        assert!((f.slope - 1.0).abs() < 1e-12);
        assert!((f.intercept - 0.7f64.ln()).abs() < 1e-12);
        assert!(f.residual < 1e-12);
        assert!((fit_rate(&rows(3.0, 2)).unwrap().slope - 2.0).abs() < 1e-12);
    }

    #[test]
    fn zero_error_row_is_excluded() {
        let mut r = rows(1.0, 1);
        r[2].1 = 0.0;
        let f = fit_rate(&r).unwrap();
        assert_eq!(f.rows_used, 5);
        assert!((f.slope - 1.0).abs() < 1e-12);
    }

    #[test]
    fn too_few_rows() {
        let r = rows(1.0, 1);
        assert!(matches!(fit_rate(&r[..2]), Err(Error::InsufficientData(2))));
        let mut r = r[..3].to_vec();
        r[0].1 = f64::NAN;
        assert!(matches!(fit_rate(&r), Err(Error::InsufficientData(2))));
    }
}
