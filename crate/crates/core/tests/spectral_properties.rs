use std::f64::consts::{FRAC_2_PI, PI};

use nlqw::spectral::{random_spectrum, read_snapshot, sample_lattice, shannon_interpolate, write_snapshot, GridSpec, LatticeField};
use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn lattice(values: &[[f64; 4]], spacing: f64) -> LatticeField {
    let grid = GridSpec::new(spacing, values.len()).unwrap();
    let mut u = LatticeField::zeros(grid);
    for (n, v) in values.iter().enumerate() {
        u.set(n, [c(v[0], v[1]), c(v[2], v[3])]);
    }
    u
}

fn values(points: usize) -> impl Strategy<Value = Vec<[f64; 4]>> {
    prop::collection::vec(prop::array::uniform4(-2.0f64..2.0), points)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn parseval(v in values(64), spacing in 0.05f64..1.0) {
        let u = lattice(&v, spacing);
        let n2 = u.norm_sq();
        prop_assert!((u.dft_forward().norm_sq() - n2).abs() <= 1e-12 * n2.max(1e-300));
    }

    #[test]
    fn transform_round_trip(v in values(32)) {
        let u = lattice(&v, 0.3);
        prop_assert!(u.dft_forward().dft_inverse().max_site_distance(&u).unwrap() < 1e-12);
    }

    #[test]
    fn interpolation_reproduces_samples_and_is_isometric(v in values(32)) {
        let u = lattice(&v, 0.25);
        let xs = u.grid().positions();
        let at = shannon_interpolate(&u, &xs);
        for (n, w) in at.iter().enumerate() {
            prop_assert!((w[0] - u.get(n)[0]).norm() < 1e-12 && (w[1] - u.get(n)[1]).norm() < 1e-12);
        }
        let fine = u.grid().refine(8).unwrap();
        let iu = u.interpolate_onto(fine).unwrap();
        prop_assert!((iu.norm() - u.norm()).abs() < 1e-12);
        prop_assert!(sample_lattice(&iu, *u.grid()).unwrap().max_site_distance(&u).unwrap() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent_and_self_adjoint(a in values(64), b in values(64), k in 1usize..4) {
        let (u, v) = (lattice(&a, 0.125).dft_forward(), lattice(&b, 0.125).dft_forward());
        let step = 0.125 * (1 << k) as f64;
        let (ju, jv) = (u.project_band(step).unwrap(), v.project_band(step).unwrap());
        prop_assert!(ju.project_band(step).unwrap().sub(&ju).unwrap().norm() < 1e-12);
        prop_assert!((ju.inner(&v).unwrap() - u.inner(&jv).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn difference_is_dominated_by_derivative(seed in any::<u64>()) {
        let grid = GridSpec::with_length(8.0, 64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u = random_spectrum(grid, grid.spacing(), &mut rng, |xi| 1.0 / (1.0 + xi.abs()));
        let ratio = u.difference(1, grid.spacing()).norm() / u.derivative(1).norm();
        prop_assert!((FRAC_2_PI - 1e-12..=1.0 + 1e-12).contains(&ratio));
    }

    #[test]
    fn snapshot_round_trip(v in values(16)) {
        let u = lattice(&v, 0.5);
        let mut buf = Vec::new();
        write_snapshot(&u, &mut buf).unwrap();
        let back = read_snapshot(buf.as_slice()).unwrap();
        prop_assert_eq!(back.grid(), u.grid());
        prop_assert!(back.max_site_distance(&u).unwrap() < 1e-14);
    }
}

#[test]
fn dirichlet_kernel_at_midpoints() {
    let grid = GridSpec::new(1.0, 8).unwrap();
    let mut u = LatticeField::zeros(grid);
    u.set(0, [c(1.0, 0.0), c(0.0, 0.0)]);
    let xs: Vec<f64> = (0..8).map(|n| grid.position(n) + 0.5).collect();
    for (x, w) in xs.iter().zip(shannon_interpolate(&u, &xs)) {
        // (1/N) Σ_{k=-N/2}^{N/2-1} e^{2πikx/N}
        let expected: Complex64 = (-4..4).map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 * x / 8.0)).sum::<Complex64>() / 8.0;
        assert!((w[0] - expected).norm() < 1e-13);
    }
}

#[test]
fn plane_wave_coefficient() {
    let grid = GridSpec::with_length(8.0, 32).unwrap();
    let xi = grid.wavenumber(3);
    let u = LatticeField::from_fn(grid, |x| [Complex64::from_polar(1.0, xi * x), c(0.0, 0.0)]);
    let f = u.dft_forward();
    for k in 0..32 {
        let expected = if k == 3 { grid.length() / (2.0 * PI).sqrt() } else { 0.0 };
        assert!((f.get(k)[0] - c(expected, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn gaussian_h1_norm() {
    let grid = GridSpec::with_length(32.0, 1024).unwrap();
    let u = LatticeField::from_fn(grid, |x| [c((-x * x / 2.0).exp(), 0.0), c(0.0, 0.0)]).dft_forward();
    let expected = PI.sqrt() + PI.sqrt() / 2.0;
    assert!((u.hs_norm(1).unwrap().powi(2) - expected).abs() < 1e-6);
}
