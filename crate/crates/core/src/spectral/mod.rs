//! Fields on the periodic lattice `δZ/XZ` and their band-limited continuum
//! counterparts.
//!
//! A [`LatticeField`] holds `C²`-valued samples on the sites of a
//! [`GridSpec`]; a [`SpectralField`] holds its Fourier coefficients. With the
//! normalization used here the coefficients of a band-limited function do not
//! depend on which (fine enough) grid carries them, so a coarse walk state and
//! a fine reference solution can be compared mode by mode. Padding a coarse
//! spectrum with zeros onto a finer grid is exactly Shannon interpolation.

pub(crate) mod fft;
mod field;
mod grid;
mod snapshot;

use num_complex::Complex64;
use rand::Rng;

pub use field::{dft_forward, dft_inverse, sample_lattice, shannon_interpolate, LatticeField, SpectralField};
pub use grid::GridSpec;
pub use snapshot::{read_snapshot, write_snapshot};

/// Largest Sobolev index accepted by [`SpectralField::hs_norm`].
pub const MAX_SOBOLEV_INDEX: usize = 4;

/// A value in `C²`.
pub type Spinor = [Complex64; 2];

/// `⟨a, b⟩_{C²} = a₁ b̄₁ + a₂ b̄₂`.
pub fn spinor_inner(a: &Spinor, b: &Spinor) -> Complex64 {
    a[0] * b[0].conj() + a[1] * b[1].conj()
}

pub fn spinor_norm_sq(a: &Spinor) -> f64 {
    a[0].norm_sqr() + a[1].norm_sqr()
}

/// Random spectrum with independent complex Gaussian-like coefficients scaled
/// by `envelope(ξ)`; modes outside `[-π/band_step, π/band_step)` are zero.
pub fn random_spectrum<R: Rng + ?Sized>(
    grid: GridSpec,
    band_step: f64,
    rng: &mut R,
    envelope: impl Fn(f64) -> f64,
) -> SpectralField {
    let edge = std::f64::consts::PI / band_step;
    SpectralField::from_fn(grid, |xi| {
        let mut draw = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let pair = [draw(), draw()];
        if xi < -edge - 1e-9 || xi >= edge - 1e-9 {
            [Complex64::new(0.0, 0.0); 2]
        } else {
            let w = envelope(xi);
            [pair[0] * w, pair[1] * w]
        }
    })
}
