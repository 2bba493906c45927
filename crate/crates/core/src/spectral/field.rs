use std::f64::consts::PI;

use num_complex::Complex64;

use super::{fft, spinor_norm_sq, GridSpec, Spinor, MAX_SOBOLEV_INDEX};
use crate::error::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn check_grid(expected: &GridSpec, found: &GridSpec) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            expected: expected.points(),
            expected_spacing: expected.spacing(),
            found: found.points(),
            found_spacing: found.spacing(),
        })
    }
}

fn sobolev_weight(xi: f64, s: usize) -> f64 {
    let xi2 = xi * xi;
    let mut w = 0.0;
    let mut p = 1.0;
    for _ in 0..=s {
        w += p;
        p *= xi2;
    }
    w
}

/// `C²`-valued samples on the sites of a periodic lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeField {
    grid: GridSpec,
    components: [Vec<Complex64>; 2],
}

impl LatticeField {
    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.points();
        Self { grid, components: [vec![ZERO; n], vec![ZERO; n]] }
    }

    /// Samples `f` at the torus coordinate of every site.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(f64) -> Spinor) -> Self {
        let mut out = Self::zeros(grid);
        for n in 0..grid.points() {
            out.set(n, f(grid.position(n)));
        }
        out
    }

    pub fn from_components(grid: GridSpec, components: [Vec<Complex64>; 2]) -> Result<Self> {
        for c in &components {
            if c.len() != grid.points() {
                return Err(Error::InvalidGrid(format!(
                    "component has {} samples, grid has {} sites",
                    c.len(),
                    grid.points()
                )));
            }
        }
        Ok(Self { grid, components })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn component(&self, i: usize) -> &[Complex64] {
        &self.components[i]
    }

    pub fn components_mut(&mut self) -> &mut [Vec<Complex64>; 2] {
        &mut self.components
    }

    pub fn into_components(self) -> [Vec<Complex64>; 2] {
        self.components
    }

    pub fn get(&self, n: usize) -> Spinor {
        [self.components[0][n], self.components[1][n]]
    }

    pub fn set(&mut self, n: usize, value: Spinor) {
        self.components[0][n] = value[0];
        self.components[1][n] = value[1];
    }

    /// `⟨u, v⟩ = δ Σ_x ⟨u(x), v(x)⟩_{C²}`.
    pub fn inner(&self, other: &LatticeField) -> Result<Complex64> {
        check_grid(&self.grid, &other.grid)?;
        let mut acc = ZERO;
        for c in 0..2 {
            for (a, b) in self.components[c].iter().zip(&other.components[c]) {
                acc += a * b.conj();
            }
        }
        Ok(acc * self.grid.spacing())
    }

    pub fn norm_sq(&self) -> f64 {
        let sum: f64 = self.components.iter().flat_map(|c| c.iter()).map(|z| z.norm_sqr()).sum();
        sum * self.grid.spacing()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    /// `a·u + b·v` on a common grid.
    pub fn linear_combination(
        a: Complex64,
        u: &LatticeField,
        b: Complex64,
        v: &LatticeField,
    ) -> Result<LatticeField> {
        check_grid(&u.grid, &v.grid)?;
        let mut out = u.clone();
        for c in 0..2 {
            for (o, y) in out.components[c].iter_mut().zip(&v.components[c]) {
                *o = a * *o + b * y;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &LatticeField) -> Result<LatticeField> {
        Self::linear_combination(Complex64::new(1.0, 0.0), self, Complex64::new(-1.0, 0.0), other)
    }

    /// `max_x ‖u(x) − v(x)‖_{C²}`.
    pub fn max_site_distance(&self, other: &LatticeField) -> Result<f64> {
        check_grid(&self.grid, &other.grid)?;
        Ok((0..self.grid.points())
            .map(|n| {
                let (a, b) = (self.get(n), other.get(n));
                spinor_norm_sq(&[a[0] - b[0], a[1] - b[1]]).sqrt()
            })
            .fold(0.0, f64::max))
    }

    /// Indices of sites whose value is not exactly zero.
    pub fn support(&self) -> Vec<usize> {
        (0..self.grid.points())
            .filter(|&n| self.components.iter().any(|c| c[n] != ZERO))
            .collect()
    }

    /// Discrete Fourier transform `(δ/√(2π)) Σ_x e^{-ixξ} u(x)`.
    pub fn dft_forward(&self) -> SpectralField {
        let scale = self.grid.spacing() / (2.0 * PI).sqrt();
        let mut components = self.components.clone();
        for c in components.iter_mut() {
            fft::forward(c);
            c.iter_mut().for_each(|z| *z *= scale);
        }
        SpectralField { grid: self.grid, coefficients: components }
    }

    /// Restriction to a coarser lattice whose sites are a subset of this one's.
    pub fn subsample(&self, coarse: GridSpec) -> Result<LatticeField> {
        let stride = coarse.nested_stride(&self.grid).ok_or_else(|| {
            Error::InvalidGrid(format!(
                "{} points at spacing {} are not nested in {} points at spacing {}",
                coarse.points(),
                coarse.spacing(),
                self.grid.points(),
                self.grid.spacing()
            ))
        })?;
        let components = [0, 1].map(|c| {
            self.components[c].iter().step_by(stride).copied().collect::<Vec<_>>()
        });
        Ok(LatticeField { grid: coarse, components })
    }

    /// Applies `D_δ^order` with `D_δ u(x) = (u(x+δ) − u(x))/δ` on this lattice.
    pub fn difference(&self, order: usize) -> LatticeField {
        let n = self.grid.points();
        let inv = 1.0 / self.grid.spacing();
        let mut out = self.clone();
        for _ in 0..order {
            for c in out.components.iter_mut() {
                let first = c[0];
                for i in 0..n - 1 {
                    c[i] = (c[i + 1] - c[i]) * inv;
                }
                c[n - 1] = (first - c[n - 1]) * inv;
            }
        }
        out
    }

    /// Shannon interpolation `I_δ u`, represented on a finer grid of the same torus.
    pub fn interpolate_onto(&self, fine: GridSpec) -> Result<SpectralField> {
        self.dft_forward().resample(fine)
    }

    /// Evaluates the band-limited interpolant `I_δ u` at arbitrary points.
    pub fn interpolate_at(&self, xs: &[f64]) -> Vec<Spinor> {
        let spectrum = self.dft_forward();
        let scale = (2.0 * PI).sqrt() / self.grid.length();
        let xis = self.grid.wavenumbers();
        xs.iter()
            .map(|&x| {
                let mut acc = [ZERO; 2];
                for (k, &xi) in xis.iter().enumerate() {
                    let phase = Complex64::from_polar(1.0, x * xi);
                    acc[0] += spectrum.coefficients[0][k] * phase;
                    acc[1] += spectrum.coefficients[1][k] * phase;
                }
                [acc[0] * scale, acc[1] * scale]
            })
            .collect()
    }
}

/// Fourier-side representation of a band-limited field: coefficients indexed by
/// the grid's wavenumbers, in FFT storage order.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralField {
    grid: GridSpec,
    coefficients: [Vec<Complex64>; 2],
}

impl SpectralField {
    pub fn zeros(grid: GridSpec) -> Self {
        let n = grid.points();
        Self { grid, coefficients: [vec![ZERO; n], vec![ZERO; n]] }
    }

    /// Coefficients `f(ξ_k)` at every represented wavenumber.
    pub fn from_fn(grid: GridSpec, mut f: impl FnMut(f64) -> Spinor) -> Self {
        let mut out = Self::zeros(grid);
        for k in 0..grid.points() {
            let v = f(grid.wavenumber(k));
            out.coefficients[0][k] = v[0];
            out.coefficients[1][k] = v[1];
        }
        out
    }

    pub fn from_components(grid: GridSpec, coefficients: [Vec<Complex64>; 2]) -> Result<Self> {
        LatticeField::from_components(grid, coefficients)
            .map(|f| Self { grid, coefficients: f.components })
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn component(&self, i: usize) -> &[Complex64] {
        &self.coefficients[i]
    }

    pub fn components_mut(&mut self) -> &mut [Vec<Complex64>; 2] {
        &mut self.coefficients
    }

    pub fn get(&self, k: usize) -> Spinor {
        [self.coefficients[0][k], self.coefficients[1][k]]
    }

    /// Coefficient of a signed mode number, zero if the grid does not carry it.
    pub fn mode(&self, mode: i64) -> Spinor {
        match self.grid.mode_index(mode) {
            Some(k) => self.get(k),
            None => [ZERO; 2],
        }
    }

    /// `⟨u, v⟩ = ∫ ⟨û(ξ), v̂(ξ)⟩ dξ` with the torus measure `2π/X` per mode.
    pub fn inner(&self, other: &SpectralField) -> Result<Complex64> {
        check_grid(&self.grid, &other.grid)?;
        let mut acc = ZERO;
        for c in 0..2 {
            for (a, b) in self.coefficients[c].iter().zip(&other.coefficients[c]) {
                acc += a * b.conj();
            }
        }
        Ok(acc * self.grid.spectral_spacing())
    }

    pub fn norm_sq(&self) -> f64 {
        let sum: f64 = self.coefficients.iter().flat_map(|c| c.iter()).map(|z| z.norm_sqr()).sum();
        sum * self.grid.spectral_spacing()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sq().sqrt()
    }

    pub fn linear_combination(
        a: Complex64,
        u: &SpectralField,
        b: Complex64,
        v: &SpectralField,
    ) -> Result<SpectralField> {
        check_grid(&u.grid, &v.grid)?;
        let mut out = u.clone();
        for c in 0..2 {
            for (o, y) in out.coefficients[c].iter_mut().zip(&v.coefficients[c]) {
                *o = a * *o + b * y;
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SpectralField) -> Result<SpectralField> {
        Self::linear_combination(Complex64::new(1.0, 0.0), self, Complex64::new(-1.0, 0.0), other)
    }

    /// Inverse transform `(1/√(2π)) ∫ e^{ixξ} û(ξ) dξ` evaluated on the lattice.
    pub fn dft_inverse(&self) -> LatticeField {
        let scale = (2.0 * PI).sqrt() / self.grid.length();
        let mut components = self.coefficients.clone();
        for c in components.iter_mut() {
            fft::inverse(c);
            c.iter_mut().for_each(|z| *z *= scale);
        }
        LatticeField { grid: self.grid, components }
    }

    /// Re-expresses the field on another grid of the same torus: modes the
    /// target carries are copied, missing modes are zero, modes the target
    /// cannot carry are dropped.
    pub fn resample(&self, target: GridSpec) -> Result<SpectralField> {
        if !self.grid.same_torus(&target) {
            return Err(Error::InvalidGrid(format!(
                "cannot resample from a torus of length {} onto one of length {}",
                self.grid.length(),
                target.length()
            )));
        }
        let mut out = SpectralField::zeros(target);
        for k in 0..target.points() {
            if let Some(src) = self.grid.mode_index(target.mode_number(k)) {
                out.coefficients[0][k] = self.coefficients[0][src];
                out.coefficients[1][k] = self.coefficients[1][src];
            }
        }
        Ok(out)
    }

    /// Orthogonal projection `j_δ` onto the band `[-π/δ, π/δ)` of a lattice with spacing `step`.
    pub fn project_band(&self, step: f64) -> Result<SpectralField> {
        if !(step.is_finite() && step >= self.grid.spacing() * (1.0 - 1e-12)) {
            return Err(Error::BandTooWide { target: step, spacing: self.grid.spacing() });
        }
        let half = self.grid.length() / (2.0 * step);
        let mut out = self.clone();
        for k in 0..self.grid.points() {
            let m = self.grid.mode_number(k) as f64;
            if m < -half - 1e-9 || m >= half - 1e-9 {
                out.coefficients[0][k] = ZERO;
                out.coefficients[1][k] = ZERO;
            }
        }
        Ok(out)
    }

    /// Multiplies each component by a wavenumber-dependent factor.
    pub fn apply_multiplier(&self, f: impl Fn(f64) -> [Complex64; 2]) -> SpectralField {
        let mut out = self.clone();
        for k in 0..self.grid.points() {
            let m = f(self.grid.wavenumber(k));
            out.coefficients[0][k] *= m[0];
            out.coefficients[1][k] *= m[1];
        }
        out
    }

    /// `∂_x^order` via the multiplier `(iξ)^order`.
    pub fn derivative(&self, order: usize) -> SpectralField {
        self.apply_multiplier(|xi| {
            let m = Complex64::new(0.0, xi).powu(order as u32);
            [m, m]
        })
    }

    /// `D_δ^order` with `δ = step`, via the multiplier `((e^{iδξ} − 1)/δ)^order`.
    pub fn difference(&self, order: usize, step: f64) -> SpectralField {
        self.apply_multiplier(|xi| {
            let m = ((Complex64::from_polar(1.0, step * xi) - 1.0) / step).powu(order as u32);
            [m, m]
        })
    }

    /// `(Σ_{j≤s} ‖∂_x^j u‖²_{L²})^{1/2}`.
    pub fn hs_norm(&self, s: usize) -> Result<f64> {
        if s > MAX_SOBOLEV_INDEX {
            return Err(Error::SobolevIndex(s));
        }
        let mut acc = 0.0;
        for k in 0..self.grid.points() {
            let w = sobolev_weight(self.grid.wavenumber(k), s);
            acc += w * spinor_norm_sq(&self.get(k));
        }
        Ok((acc * self.grid.spectral_spacing()).sqrt())
    }

    /// `‖u − v‖_{H^s}` for fields carried by possibly different grids of one
    /// torus; the comparison runs over the union of both mode sets.
    pub fn hs_distance(&self, other: &SpectralField, s: usize) -> Result<f64> {
        if s > MAX_SOBOLEV_INDEX {
            return Err(Error::SobolevIndex(s));
        }
        if !self.grid.same_torus(&other.grid) {
            return Err(Error::InvalidGrid("fields live on different tori".into()));
        }
        let wide = if self.grid.points() >= other.grid.points() { self.grid } else { other.grid };
        let mut acc = 0.0;
        for k in 0..wide.points() {
            let mode = wide.mode_number(k);
            let (a, b) = (self.mode(mode), other.mode(mode));
            let d = [a[0] - b[0], a[1] - b[1]];
            acc += sobolev_weight(wide.wavenumber(k), s) * spinor_norm_sq(&d);
        }
        Ok((acc * wide.spectral_spacing()).sqrt())
    }
}

pub fn dft_forward(u: &LatticeField) -> SpectralField {
    u.dft_forward()
}

pub fn dft_inverse(u: &SpectralField) -> LatticeField {
    u.dft_inverse()
}

/// Values of the band-limited interpolant of `u` at `xs`.
pub fn shannon_interpolate(u: &LatticeField, xs: &[f64]) -> Vec<Spinor> {
    u.interpolate_at(xs)
}

/// Point samples of `v` on the sites of `lattice`, which must be nested in
/// `v`'s grid or contain it.
pub fn sample_lattice(v: &SpectralField, lattice: GridSpec) -> Result<LatticeField> {
    if lattice.nested_stride(v.grid()).is_some() {
        v.dft_inverse().subsample(lattice)
    } else {
        Ok(v.resample(lattice)?.dft_inverse())
    }
}
