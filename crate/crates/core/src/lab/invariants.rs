use std::f64::consts::FRAC_2_PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::coin::{pauli_exp, PauliVector};
use crate::dirac::{flow_a, flow_b, flow_g, self_convergence, solve_reference, DiracModel, Scheme, SolverConfig};
use crate::error::{Error, Result};
use crate::spectral::{random_spectrum, sample_lattice, spinor_norm_sq, GridSpec, LatticeField, SpectralField, Spinor};
use crate::walk::{walk_step, WalkModel, WalkState};

use super::config::ExperimentConfig;
use super::fit::fit_rate;
use super::presets::{dirac_model, initial_field, initial_profile, walk_model, InitialShape, Preset};

/// One named check: it passes when `measured ≤ tolerance`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantCheck {
    pub name: String,
    pub module: String,
    pub measured: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Diagnostics are reported but do not fail the suite.
    pub blocking: bool,
    pub detail: String,
}

impl InvariantCheck {
    fn new(name: &str, module: &str, measured: f64, tolerance: f64, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            module: module.into(),
            measured,
            tolerance,
            passed: measured <= tolerance,
            blocking: true,
            detail: detail.into(),
        }
    }

    fn diagnostic(mut self) -> Self {
        self.blocking = false;
        self
    }

    fn failed(name: &str, module: &str, tolerance: f64, err: &Error) -> Self {
        Self::new(name, module, f64::INFINITY, tolerance, err.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub preset: Preset,
    pub seed: u64,
    pub checks: Vec<InvariantCheck>,
}

impl InvariantReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed || !c.blocking)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InvariantCheck> {
        self.checks.iter().filter(|c| c.blocking && !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&InvariantCheck> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// A walk step, replaceable so that the suite itself can be tested.
pub type StepFn<'a> = &'a dyn Fn(&WalkState, &WalkModel) -> Result<WalkState>;

const SPECTRAL: &str = "spectral";
const COIN: &str = "coin";
const WALK: &str = "walk";
const DIRAC: &str = "dirac";

pub fn run_invariant_suite(config: &ExperimentConfig) -> Result<InvariantReport> {
    run_invariant_suite_with(config, &walk_step)
}

/// Runs every registered check at the sizes in `config`, with `step` in
/// place of the walk step.
pub fn run_invariant_suite_with(config: &ExperimentConfig, step: StepFn<'_>) -> Result<InvariantReport> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let model = dirac_model(config.preset, config.mass, config.coupling);
    let mut checks = Vec::new();
    spectral_checks(&mut checks, &mut rng, config.sobolev.min(2))?;
    coin_checks(&mut checks, &mut rng, &model);
    walk_checks(&mut checks, &mut rng, config, &model, step)?;
    dirac_checks(&mut checks, &mut rng, config, &model)?;
    Ok(InvariantReport { preset: config.preset, seed: config.seed, checks })
}

fn max_of(values: impl IntoIterator<Item = f64>) -> f64 {
    values.into_iter().fold(0.0, f64::max)
}

fn gaussian_spectrum(grid: GridSpec) -> SpectralField {
    LatticeField::from_fn(grid, |x| {
        let e = (-x * x / 2.0).exp();
        [Complex64::new(e * (3.0 * x).cos(), 0.0), Complex64::new(0.0, e * (2.0 * x).sin())]
    })
    .dft_forward()
}

/// `(1 + ξ²)^{-r/2 - 1/4}`: just outside `H^r`, so approximation constants
/// at order `r` neither grow nor vanish as δ shrinks.
fn borderline_spectrum(grid: GridSpec, r: usize) -> SpectralField {
    SpectralField::from_fn(grid, |xi| {
        let a = (1.0 + xi * xi).powf(-(r as f64) / 2.0 - 0.25);
        [Complex64::new(a, 0.0), Complex64::new(0.0, a)]
    })
}

fn random_lattice(grid: GridSpec, rng: &mut ChaCha8Rng) -> LatticeField {
    LatticeField::from_fn(grid, |_| {
        [
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        ]
    })
}

fn random_band_limited(grid: GridSpec, rng: &mut ChaCha8Rng) -> SpectralField {
    random_spectrum(grid, grid.spacing(), rng, |xi| 1.0 / (1.0 + 0.1 * xi * xi))
}

fn spectral_checks(checks: &mut Vec<InvariantCheck>, rng: &mut ChaCha8Rng, s: usize) -> Result<()> {
    let lattice = GridSpec::with_length(8.0, 64)?;
    let fine = lattice.refine(4)?;

    let parseval = max_of((0..20).map(|_| {
        let u = random_lattice(lattice, rng);
        (u.dft_forward().norm_sq() - u.norm_sq()).abs() / u.norm_sq()
    }));
    checks.push(InvariantCheck::new("parseval", SPECTRAL, parseval, 1e-12, "relative, 20 random fields"));

    let mut round_trip = 0.0f64;
    for _ in 0..20 {
        let u = random_lattice(lattice, rng);
        let iu = u.interpolate_onto(fine)?;
        round_trip = round_trip
            .max(sample_lattice(&iu, lattice)?.max_site_distance(&u)?)
            .max((iu.norm() - u.norm()).abs());
        let v = random_spectrum(fine, lattice.spacing(), rng, |_| 1.0);
        let back = sample_lattice(&v, lattice)?.interpolate_onto(fine)?;
        round_trip = round_trip.max(back.sub(&v)?.norm());
    }
    checks.push(InvariantCheck::new("shannon-round-trip", SPECTRAL, round_trip, 1e-12, "sampling and interpolation are mutually inverse isometries"));

    let mut projection = 0.0f64;
    for _ in 0..20 {
        let u = random_lattice(fine, rng).dft_forward();
        let v = random_lattice(fine, rng).dft_forward();
        let ju = u.project_band(lattice.spacing())?;
        let jv = v.project_band(lattice.spacing())?;
        projection = projection
            .max(ju.project_band(lattice.spacing())?.sub(&ju)?.norm())
            .max((ju.inner(&v)? - u.inner(&jv)?).norm());
    }
    checks.push(InvariantCheck::new("projection", SPECTRAL, projection, 1e-12, "idempotent and self-adjoint"));

    let mut excess = f64::NEG_INFINITY;
    let (mut lo1, mut hi1, mut lo2, mut hi2) = (f64::INFINITY, 0.0f64, f64::INFINITY, 0.0f64);
    let mut fields: Vec<SpectralField> = (0..100).map(|_| random_band_limited(lattice, rng)).collect();
    let nyquist = lattice.mode_index(-(lattice.points() as i64) / 2).expect("nyquist mode");
    let mut edge = SpectralField::zeros(lattice);
    edge.components_mut()[0][nyquist] = Complex64::new(1.0, 0.0);
    fields.push(edge);
    let d = lattice.spacing();
    for u in &fields {
        let (d1, p1) = (u.difference(1, d).norm(), u.derivative(1).norm());
        let (d2, p2) = (u.difference(2, d).norm(), u.derivative(2).norm());
        excess = excess.max(d1 - p1);
        lo1 = lo1.min(d1 / p1);
        hi1 = hi1.max(d1 / p1);
        lo2 = lo2.min(d2 / p2);
        hi2 = hi2.max(d2 / p2);
    }
    checks.push(InvariantCheck::new(
        "difference-bounded-by-derivative",
        SPECTRAL,
        excess.max(0.0),
        1e-12,
        format!("max of |D u| - |u'| = {excess:.3e} over 101 band-limited fields"),
    ));
    let outside = |lo: f64, hi: f64, a: f64| (a - lo).max(hi - 1.0).max(0.0);
    checks.push(InvariantCheck::new(
        "difference-derivative-equivalence",
        SPECTRAL,
        outside(lo1, hi1, FRAC_2_PI).max(outside(lo2, hi2, FRAC_2_PI * FRAC_2_PI)),
        1e-6,
        format!("order 1 ratios in [{lo1:.6}, {hi1:.6}], order 2 in [{lo2:.6}, {hi2:.6}]"),
    ));

    let master = GridSpec::new(2f64.powi(-10), 16 * 1024)?;
    let smooth = gaussian_spectrum(master);
    let mut slack = f64::INFINITY;
    for k in 3..=6 {
        let delta = 2f64.powi(-k);
        let coarse = master.coarsen(1 << (10 - k))?;
        for j in 0..=2 {
            let lhs = smooth.difference(j, delta).dft_inverse().subsample(coarse)?.norm_sq();
            let (a, b) = (smooth.derivative(j).norm(), smooth.derivative(j + 1).norm());
            slack = slack.min(a * a + 2.0 * delta * a * b - lhs);
        }
    }
    checks.push(InvariantCheck::new(
        "lattice-difference-norm",
        SPECTRAL,
        (-slack).max(0.0),
        1e-10,
        format!("minimum slack {slack:.3e} for j in 0..=2, delta 2^-3..2^-6"),
    ));

    let master = GridSpec::new(2f64.powi(-12), 1 << 15)?;
    let deltas: Vec<f64> = (3..=8).map(|k| 2f64.powi(-k)).collect();
    for sigma in [1usize, 2] {
        let rough = borderline_spectrum(master, s + sigma);
        let upper = rough.hs_norm(s + sigma)?;
        let mut projection_constants = Vec::new();
        let mut sampling_constants = Vec::new();
        for &delta in &deltas {
            let scale = delta.powi(sigma as i32) * upper;
            let tail = rough.sub(&rough.project_band(delta)?)?.hs_norm(s)?;
            projection_constants.push(tail / scale);
            let lattice = master.coarsen((delta / master.spacing()).round() as usize)?;
            let interpolated = sample_lattice(&rough, lattice)?.interpolate_onto(master)?;
            sampling_constants.push(interpolated.hs_distance(&rough, s)? / scale);
        }
        for (name, cs) in [("projection-constant", projection_constants), ("sampling-constant", sampling_constants)] {
            let mean = cs.iter().sum::<f64>() / cs.len() as f64;
            let spread = max_of(cs.iter().map(|c| (c / mean - 1.0).abs()));
            let listed: Vec<String> = cs.iter().map(|c| format!("{c:.4}")).collect();
            checks.push(InvariantCheck::new(
                &format!("{name}-sigma{sigma}"),
                SPECTRAL,
                spread,
                0.1,
                format!("relative spread of the constants over delta 2^-3..2^-8: {}", listed.join(" ")),
            ));
        }
    }
    Ok(())
}

fn random_spinor(rng: &mut ChaCha8Rng) -> Spinor {
    [
        Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
        Complex64::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)),
    ]
}

fn coin_checks(checks: &mut Vec<InvariantCheck>, rng: &mut ChaCha8Rng, model: &DiracModel) {
    let unitarity = max_of((0..1000).map(|_| {
        let s = PauliVector(std::array::from_fn(|_| rng.gen_range(-3.0..3.0)));
        pauli_exp(&s, rng.gen_range(-2.0..2.0)).unitarity_defect()
    }));
    checks.push(InvariantCheck::new("coin-unitarity", COIN, unitarity, 1e-12, "1000 random coin vectors and times"));

    let mut conservation = 0.0f64;
    let mut frechet = 0.0f64;
    let mut nonlinear_unitarity = 0.0f64;
    for coin in &model.nonlinear {
        for _ in 0..200 {
            let u = random_spinor(rng);
            let w = random_spinor(rng);
            let v = coin.apply(&u, rng.gen_range(-1.0..1.0));
            conservation = conservation.max((coin.density(&v) - coin.density(&u)).abs());
            nonlinear_unitarity = nonlinear_unitarity.max((spinor_norm_sq(&v) - spinor_norm_sq(&u)).abs());
            frechet = frechet.max(coin.frechet_defect(&u, &w, 1e-5));
        }
    }
    let detail = format!("{} nonlinear coin(s), 200 random states each", model.nonlinear.len());
    checks.push(InvariantCheck::new("nonlinear-coin-unitarity", COIN, nonlinear_unitarity, 1e-12, detail.clone()));
    checks.push(InvariantCheck::new("nonlinear-density-conserved", COIN, conservation, 1e-12, detail.clone()));
    checks.push(InvariantCheck::new("nonlinear-derivative", COIN, frechet, 1e-6, detail));
}

/// Largest per-site difference between one walk step and one Lie step of
/// the continuum flows at `dt = δ`, sampled back on the lattice.
///
/// The continuum side acts on a grid four times finer; a transport by `δ`
/// is an exact shift there.
pub fn lattice_continuum_defect(model: &DiracModel, delta: f64, length: f64, step: StepFn<'_>) -> Result<f64> {
    let lattice = GridSpec::new(delta, (length / delta).round() as usize)?;
    let fine = lattice.refine(4)?;
    let v = gaussian_spectrum(fine).project_band(delta)?;
    let walk = walk_model(model, lattice);
    let stepped = step(&WalkState::initial(sample_lattice(&v, lattice)?), &walk)?;
    let u = flow_g(&v.dft_inverse(), &model.nonlinear, delta);
    let u = flow_b(&u, &model.coin, delta);
    let u = flow_a(&u.dft_forward(), delta).dft_inverse();
    u.subsample(lattice)?.max_site_distance(&stepped.field)
}

fn walk_checks(
    checks: &mut Vec<InvariantCheck>,
    rng: &mut ChaCha8Rng,
    config: &ExperimentConfig,
    model: &DiracModel,
    step: StepFn<'_>,
) -> Result<()> {
    let delta = config.finest_delta();
    let lattice = config.master_grid()?;
    let walk = walk_model(model, lattice);
    let mut state = WalkState::initial(initial_field(config, lattice));
    let n0 = state.field.norm();
    let mut drift = 0.0f64;
    for _ in 0..config.steps(delta) {
        state = step(&state, &walk)?;
        drift = drift.max((state.field.norm() - n0).abs());
    }
    checks.push(InvariantCheck::new(
        "walk-norm",
        WALK,
        drift,
        1e-10,
        format!("{} steps at delta = {delta}", config.steps(delta)),
    ));

    let small = GridSpec::new(0.25, 64)?;
    let walk = walk_model(model, small);
    let mut spread = 0usize;
    let mut u = LatticeField::zeros(small);
    u.set(32, random_spinor(rng));
    let mut state = WalkState::initial(u);
    for m in 1..=12 {
        state = step(&state, &walk)?;
        for n in state.field.support() {
            spread = spread.max(n.abs_diff(32).saturating_sub(m));
        }
    }
    checks.push(InvariantCheck::new("finite-propagation", WALK, spread as f64, 0.0, "sites beyond the light cone after 12 steps"));

    let linear = walk_model(&DiracModel::new(model.coin.clone(), Vec::new()), small);
    let (a, b) = (Complex64::new(0.7, -1.2), Complex64::new(-0.4, 0.3));
    let u = random_lattice(small, rng);
    let v = random_lattice(small, rng);
    let run = |w: LatticeField| -> Result<LatticeField> {
        let mut s = WalkState::initial(w);
        for _ in 0..20 {
            s = step(&s, &linear)?;
        }
        Ok(s.field)
    };
    let combined = run(LatticeField::linear_combination(a, &u, b, &v)?)?;
    let separate = LatticeField::linear_combination(a, &run(u)?, b, &run(v)?)?;
    checks.push(InvariantCheck::new(
        "superposition",
        WALK,
        combined.max_site_distance(&separate)?,
        1e-12,
        "linear part of the preset, 20 steps",
    ));

    let mut defects = Vec::new();
    for k in [4, 6] {
        defects.push(lattice_continuum_defect(model, 2f64.powi(-k), config.length, step)?);
    }
    checks.push(InvariantCheck::new(
        "lattice-continuum-step",
        WALK,
        max_of(defects.iter().copied()),
        1e-10,
        format!("delta 2^-4: {:.2e}, 2^-6: {:.2e}", defects[0], defects[1]),
    ));

    let walk = walk_model(model, lattice);
    let mut parity = 0.0f64;
    for _ in 0..1000 {
        let x = rng.gen_range(-config.length / 2.0..config.length / 2.0);
        let (p, q) = (walk.coin().eval(x), model.coin.eval(x));
        parity = parity.max(max_of((0..4).map(|i| (p.0[i] - q.0[i]).abs())));
        let r = rng.gen_range(-5.0..5.0);
        for (cw, cd) in walk.nonlinear().iter().zip(&model.nonlinear) {
            parity = parity
                .max((cw.g().eval(r) - cd.g().eval(r)).abs())
                .max((*cw.gamma().matrix() - *cd.gamma().matrix()).norm_inf());
        }
    }
    if walk.nonlinear().len() != model.nonlinear.len() {
        parity = f64::INFINITY;
    }
    checks.push(InvariantCheck::new("preset-parity", WALK, parity, 1e-14, "1000 random points"));
    Ok(())
}

/// Largest per-mode deviation of the reference solution of the free model
/// (mass 1) from `e^{-itH(ξ)}û₀(ξ)`, `H(ξ) = ξσ₃ − σ₁`, at `t = horizon`,
/// for `u₀ = (e^{-x²/2}, 0)`.
pub fn free_dispersion_defect(grid: GridSpec, dt: f64, horizon: f64, tolerance: f64) -> Result<f64> {
    let profile = initial_profile(InitialShape::Gaussian, 1.0, 1.0, 0.0);
    let u0 = LatticeField::from_fn(grid, |x| [Complex64::new(profile(x), 0.0), Complex64::new(0.0, 0.0)]).dft_forward();
    let config = SolverConfig { dt, scheme: Scheme::Strang, horizon, tolerance, sobolev: 1 };
    let trajectory = solve_reference(&u0, &dirac_model(Preset::Free, 1.0, 0.0), &[horizon], config)?;
    let u = &trajectory.fields[0];
    Ok(max_of((0..grid.points()).map(|k| {
        let exact = pauli_exp(&PauliVector::new(0.0, -1.0, 0.0, grid.wavenumber(k)), horizon).apply(&u0.get(k));
        let got = u.get(k);
        (got[0] - exact[0]).norm().max((got[1] - exact[1]).norm())
    })))
}

/// Observed order of the splitting `scheme` on `model`, from successive
/// step halvings.
pub fn self_convergence_slope(model: &DiracModel, scheme: Scheme) -> Result<f64> {
    let grid = GridSpec::with_length(32.0, 256)?;
    let dts: Vec<f64> = (2..=6).map(|k| 2f64.powi(-k)).collect();
    Ok(fit_rate(&self_convergence(&gaussian_spectrum(grid), model, 1.0, &dts, scheme, 1)?)?.slope)
}

fn dirac_checks(
    checks: &mut Vec<InvariantCheck>,
    rng: &mut ChaCha8Rng,
    config: &ExperimentConfig,
    model: &DiracModel,
) -> Result<()> {
    let grid = GridSpec::with_length(32.0, 256)?;
    let u = random_band_limited(grid, rng);
    let lat = u.dft_inverse();
    let (a, b) = (0.3, 0.45);
    let law_a = flow_a(&flow_a(&u, a), b).sub(&flow_a(&u, a + b))?.norm();
    let law_b = flow_b(&flow_b(&lat, &model.coin, a), &model.coin, b)
        .max_site_distance(&flow_b(&lat, &model.coin, a + b))?;
    let law_g = flow_g(&flow_g(&lat, &model.nonlinear, a), &model.nonlinear, b)
        .max_site_distance(&flow_g(&lat, &model.nonlinear, a + b))?;
    checks.push(InvariantCheck::new(
        "flow-group-law",
        DIRAC,
        law_a.max(law_b).max(law_g),
        1e-12,
        format!("A {law_a:.1e}, B {law_b:.1e}, G {law_g:.1e}"),
    ));

    let reference_grid = config.reference_grid()?;
    let u0 = initial_field(config, config.master_grid()?).dft_forward().resample(reference_grid)?;
    let times: Vec<f64> = (1..=16).map(|i| config.final_time * i as f64 / 16.0).collect();
    let solver = SolverConfig {
        dt: config.reference_step(),
        scheme: config.reference_scheme,
        horizon: config.final_time,
        tolerance: config.reference_tolerance,
        sobolev: config.sobolev,
    };
    match solve_reference(&u0, model, &times, solver) {
        Ok(t) => {
            checks.push(InvariantCheck::new(
                "reference-gate",
                DIRAC,
                t.gate_defect,
                config.reference_tolerance,
                "H^s change when halving the reference step",
            ));
            checks.push(InvariantCheck::new("reference-charge", DIRAC, t.charge_drift, 1e-10, "L2 drift over [0, T]"));
            checks.push(
                InvariantCheck::new("reference-growth", DIRAC, t.growth, 3.0, "sup of |u(t)|_{H^{s+1}} / |u0|_{H^{s+1}}")
                    .diagnostic(),
            );
        }
        Err(e) => checks.push(InvariantCheck::failed("reference-gate", DIRAC, config.reference_tolerance, &e)),
    }

    match free_dispersion_defect(reference_grid, config.reference_step(), 1.0, config.reference_tolerance) {
        Ok(d) => checks.push(InvariantCheck::new("free-dispersion", DIRAC, d, 1e-9, "per mode at t = 1")),
        Err(e) => checks.push(InvariantCheck::failed("free-dispersion", DIRAC, 1e-9, &e)),
    }

    for preset in [Preset::Free, Preset::PositionCoin] {
        let m = dirac_model(preset, config.mass, 0.0);
        for (scheme, order) in [(Scheme::Strang, 2.0), (Scheme::Lie, 1.0)] {
            let slope = self_convergence_slope(&m, scheme)?;
            checks.push(InvariantCheck::new(
                &format!("self-convergence-{scheme}-{preset}"),
                DIRAC,
                (slope - order).abs(),
                0.2,
                format!("observed order {slope:.4}"),
            ));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::apply_shift;

    #[test]
    fn free_walk_matches_one_lie_step() {
        let model = dirac_model(Preset::Free, 1.0, 0.0);
        let d = lattice_continuum_defect(&model, 2f64.powi(-4), 32.0, &walk_step).unwrap();
        assert!(d < 1e-12, "{d}");
    }

    #[test]
    fn perturbed_shift_is_caught() {
        let model = dirac_model(Preset::GrossNeveu, 1.0, 1.0);
        let broken = |s: &WalkState, m: &WalkModel| -> Result<WalkState> {
            let mut next = walk_step(s, m)?;
            next.field = apply_shift(&next.field);
            Ok(next)
        };
        let d = lattice_continuum_defect(&model, 2f64.powi(-4), 32.0, &broken).unwrap();
        assert!(d > 1e-3, "{d}");
    }
}
