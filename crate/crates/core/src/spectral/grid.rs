use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A periodic lattice `δ·{0, …, N-1}` on a torus of length `X = δ·N`.
///
/// Sites are addressed by storage index `n`; the torus coordinate of site `n`
/// is wrapped into `[-X/2, X/2)`. Fourier modes are stored in FFT order and
/// carry the signed wavenumbers `ξ_k = 2πk/X` for `k ∈ [-N/2, N/2)`, so the
/// represented band is the half-open interval `[-π/δ, π/δ)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    spacing: f64,
    points: usize,
}

impl GridSpec {
    pub fn new(spacing: f64, points: usize) -> Result<Self> {
        if !(spacing.is_finite() && spacing > 0.0) {
            return Err(Error::InvalidGrid(format!("spacing must be positive, got {spacing}")));
        }
        if points < 2 || !points.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "point count must be even and at least 2, got {points}"
            )));
        }
        Ok(Self { spacing, points })
    }

    /// Grid with `points` sites on a torus of the given length.
    pub fn with_length(length: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidGrid("point count must be positive".into()));
        }
        Self::new(length / points as f64, points)
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn length(&self) -> f64 {
        self.spacing * self.points as f64
    }

    /// Spacing `2π/X` between neighbouring wavenumbers.
    pub fn spectral_spacing(&self) -> f64 {
        2.0 * PI / self.length()
    }

    /// `π/δ`, the edge of the represented band.
    pub fn band_edge(&self) -> f64 {
        PI / self.spacing
    }

    /// Signed mode number of storage index `k`.
    pub fn mode_number(&self, k: usize) -> i64 {
        let n = self.points as i64;
        let k = k as i64;
        if k < n / 2 {
            k
        } else {
            k - n
        }
    }

    /// Storage index of a signed mode number, if the grid represents it.
    pub fn mode_index(&self, mode: i64) -> Option<usize> {
        let half = (self.points / 2) as i64;
        if mode < -half || mode >= half {
            return None;
        }
        Some(if mode >= 0 {
            mode as usize
        } else {
            (self.points as i64 + mode) as usize
        })
    }

    pub fn wavenumber(&self, k: usize) -> f64 {
        self.mode_number(k) as f64 * self.spectral_spacing()
    }

    pub fn wavenumbers(&self) -> Vec<f64> {
        (0..self.points).map(|k| self.wavenumber(k)).collect()
    }

    /// Torus coordinate of site `n`, wrapped into `[-X/2, X/2)`.
    pub fn position(&self, n: usize) -> f64 {
        self.mode_number(n) as f64 * self.spacing
    }

    pub fn positions(&self) -> Vec<f64> {
        (0..self.points).map(|n| self.position(n)).collect()
    }

    /// Coarser grid on the same torus keeping every `factor`-th site.
    pub fn coarsen(&self, factor: usize) -> Result<Self> {
        if factor == 0 || !self.points.is_multiple_of(factor) {
            return Err(Error::InvalidGrid(format!(
                "cannot coarsen {} points by a factor of {factor}",
                self.points
            )));
        }
        Self::new(self.spacing * factor as f64, self.points / factor)
    }

    pub fn refine(&self, factor: usize) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidGrid("refinement factor must be positive".into()));
        }
        Self::new(self.spacing / factor as f64, self.points * factor)
    }

    pub fn same_torus(&self, other: &GridSpec) -> bool {
        (self.length() - other.length()).abs() <= 1e-12 * self.length()
    }

    /// If `self`'s sites are a subset of `fine`'s, the stride between them.
    pub fn nested_stride(&self, fine: &GridSpec) -> Option<usize> {
        if !self.same_torus(fine) || fine.points < self.points || !fine.points.is_multiple_of(self.points) {
            return None;
        }
        Some(fine.points / self.points)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_is_spacing_times_points() {
        let g = GridSpec::with_length(64.0, 1 << 10).unwrap();
        assert_eq!(g.spacing() * g.points() as f64, g.length());
        assert_eq!(g.length(), 64.0);
    }

    #[test]
    fn rejects_odd_and_degenerate_grids() {
        assert!(GridSpec::new(0.1, 7).is_err());
        assert!(GridSpec::new(0.0, 8).is_err());
        assert!(GridSpec::new(f64::NAN, 8).is_err());
        assert!(GridSpec::with_length(1.0, 0).is_err());
    }

    #[test]
    fn wavenumbers_stay_inside_half_open_band() {
        let g = GridSpec::new(0.25, 64).unwrap();
        let edge = g.band_edge();
        for xi in g.wavenumbers() {
            assert!(xi >= -edge - 1e-12 && xi < edge);
        }
        assert_eq!(g.mode_number(32), -32);
        assert!((g.wavenumber(32) + edge).abs() < 1e-12);
    }

    #[test]
    fn mode_index_inverts_mode_number() {
        let g = GridSpec::new(1.0, 16).unwrap();
        for k in 0..16 {
            assert_eq!(g.mode_index(g.mode_number(k)), Some(k));
        }
        assert_eq!(g.mode_index(8), None);
        assert_eq!(g.mode_index(-9), None);
    }

    #[test]
    fn positions_wrap_into_centered_period() {
        let g = GridSpec::new(1.0, 8).unwrap();
        assert_eq!(g.positions(), vec![0.0, 1.0, 2.0, 3.0, -4.0, -3.0, -2.0, -1.0]);
    }

    #[test]
    fn coarse_grids_nest() {
        let fine = GridSpec::with_length(64.0, 1 << 12).unwrap();
        let coarse = fine.coarsen(8).unwrap();
        assert_eq!(coarse.nested_stride(&fine), Some(8));
        assert_eq!(fine.nested_stride(&coarse), None);
        assert!(fine.coarsen(3).is_err());
    }
}
