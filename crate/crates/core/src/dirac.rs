//! Split-step solver for the nonlinear Dirac equation
//!
//! ```text
//! i ∂_t u = −iσ₃ ∂_x u + s(x)·σ u + g(⟨u, γu⟩) γu
//! ```
//!
//! The right-hand side splits into three flows with exact solutions:
//! transport `A = −iσ₃∂_x` (a Fourier multiplier), the linear coin
//! `B = s·σ` (a pointwise `SU(2)`-type exponential) and the nonlinearity
//! `G(v) = g(⟨v, γv⟩)γv`, which conserves `⟨v, γv⟩` pointwise and is therefore
//! a pointwise phase. One Lie step `A(δ)∘B(δ)∘G(δ)` at step `δ` is the
//! quantum walk step lifted to the continuum; the Strang composition is used
//! for reference solutions.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::{eval_coin_field, CoinField, CoinProfile, NonlinearCoin};
use crate::error::{Error, Result};
use crate::spectral::{fft, GridSpec, LatticeField, SpectralField};
use crate::walk::{coin_in_place, nonlinear_in_place};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct DiracModel {
    pub coin: CoinProfile,
    pub nonlinear: Vec<NonlinearCoin>,
}

impl DiracModel {
    pub fn new(coin: CoinProfile, nonlinear: Vec<NonlinearCoin>) -> Self {
        Self { coin, nonlinear }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scheme {
    Lie,
    Strang,
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "lie" => Ok(Scheme::Lie),
            "strang" => Ok(Scheme::Strang),
            other => Err(Error::Config(format!("unknown scheme `{other}` (expected lie or strang)"))),
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Scheme::Lie => "lie",
            Scheme::Strang => "strang",
        })
    }
}

/// `e^{-itA}`: component 1 picks up `e^{-itξ}`, component 2 `e^{+itξ}`.
pub fn flow_a(u: &SpectralField, t: f64) -> SpectralField {
    u.apply_multiplier(|xi| {
        let p = Complex64::from_polar(1.0, -t * xi);
        [p, p.conj()]
    })
}

/// `e^{-itB}`: the pointwise coin `e^{-it s(x)·σ}`.
pub fn flow_b(u: &LatticeField, coin: &CoinProfile, t: f64) -> LatticeField {
    let field = eval_coin_field(coin, *u.grid(), t);
    let mut out = u.clone();
    coin_in_place(&mut out, &field).expect("coin field built on the field's own grid");
    out
}

/// Exact flow of `i ∂_t v = G(v)` for time `t`, nonlinear coins in list order.
pub fn flow_g(u: &LatticeField, coins: &[NonlinearCoin], t: f64) -> LatticeField {
    let mut out = u.clone();
    nonlinear_in_place(&mut out, coins, t);
    out
}

/// `A(dt)∘B(dt)∘G(dt)`.
pub fn lie_step(u: &LatticeField, model: &DiracModel, dt: f64) -> LatticeField {
    let mut out = u.clone();
    SplitStepper::new(model.clone(), *u.grid(), dt, Scheme::Lie).step(&mut out);
    out
}

/// `G(dt/2)∘B(dt/2)∘A(dt)∘B(dt/2)∘G(dt/2)`.
pub fn strang_step(u: &LatticeField, model: &DiracModel, dt: f64) -> LatticeField {
    let mut out = u.clone();
    SplitStepper::new(model.clone(), *u.grid(), dt, Scheme::Strang).step(&mut out);
    out
}

/// A split-step propagator for one grid and one step size, with the coin
/// matrices and transport multipliers precomputed.
#[derive(Clone, Debug)]
pub struct SplitStepper {
    model: DiracModel,
    grid: GridSpec,
    dt: f64,
    scheme: Scheme,
    coin: CoinField,
    transport: Vec<Complex64>,
}

impl SplitStepper {
    pub fn new(model: DiracModel, grid: GridSpec, dt: f64, scheme: Scheme) -> Self {
        let coin_time = match scheme {
            Scheme::Lie => dt,
            Scheme::Strang => dt / 2.0,
        };
        let coin = eval_coin_field(&model.coin, grid, coin_time);
        // includes the 1/N of the unnormalized inverse FFT
        let scale = 1.0 / grid.points() as f64;
        let transport = (0..grid.points())
            .map(|k| Complex64::from_polar(scale, -dt * grid.wavenumber(k)))
            .collect();
        Self { model, grid, dt, scheme, coin, transport }
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    fn transport(&self, u: &mut LatticeField) {
        let [up, down] = u.components_mut();
        fft::forward(up);
        fft::forward(down);
        for ((a, b), p) in up.iter_mut().zip(down.iter_mut()).zip(&self.transport) {
            *a *= p;
            *b *= p.conj();
        }
        fft::inverse(up);
        fft::inverse(down);
    }

    fn coin(&self, u: &mut LatticeField) {
        if !(self.model.coin.is_constant() && self.model.coin.base.0 == [0.0; 4]) {
            coin_in_place(u, &self.coin).expect("stepper grid matches field grid");
        }
    }

    pub fn step(&self, u: &mut LatticeField) {
        debug_assert_eq!(u.grid(), &self.grid);
        match self.scheme {
            Scheme::Lie => {
                nonlinear_in_place(u, &self.model.nonlinear, self.dt);
                self.coin(u);
                self.transport(u);
            }
            Scheme::Strang => {
                let h = self.dt / 2.0;
                nonlinear_in_place(u, &self.model.nonlinear, h);
                self.coin(u);
                self.transport(u);
                self.coin(u);
                nonlinear_in_place(u, &self.model.nonlinear, h);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Reference step `dt_ref`.
    pub dt: f64,
    pub scheme: Scheme,
    pub horizon: f64,
    /// Largest accepted `H^s` change when `dt` is halved, and largest `H^s`
    /// content accepted in the outer half of the band.
    pub tolerance: f64,
    pub sobolev: usize,
}

impl SolverConfig {
    fn steps_to(&self, t: f64) -> Result<usize> {
        let steps = (t / self.dt).round();
        if t < 0.0 || (steps * self.dt - t).abs() > 1e-9 * t.max(1.0) {
            return Err(Error::Config(format!(
                "time {t} is not a multiple of the reference step {}",
                self.dt
            )));
        }
        Ok(steps as usize)
    }
}

/// Reference solution advanced on demand, certified on the fly by a shadow
/// run at half the step.
#[derive(Clone, Debug)]
pub struct ReferenceSolver {
    config: SolverConfig,
    primary: SplitStepper,
    shadow: SplitStepper,
    state: LatticeField,
    shadow_state: LatticeField,
    steps: usize,
    initial_norm: f64,
    initial_upper_norm: f64,
    gate_defect: f64,
    charge_drift: f64,
    growth: f64,
}

impl ReferenceSolver {
    pub fn new(u0: &SpectralField, model: &DiracModel, config: SolverConfig) -> Result<Self> {
        if !(config.dt > 0.0 && config.dt.is_finite()) {
            return Err(Error::Config(format!("reference step must be positive, got {}", config.dt)));
        }
        let grid = *u0.grid();
        let state = u0.dft_inverse();
        Ok(Self {
            config,
            primary: SplitStepper::new(model.clone(), grid, config.dt, config.scheme),
            shadow: SplitStepper::new(model.clone(), grid, config.dt / 2.0, config.scheme),
            shadow_state: state.clone(),
            state,
            steps: 0,
            initial_norm: u0.norm(),
            initial_upper_norm: u0.hs_norm(config.sobolev + 1)?,
            gate_defect: 0.0,
            charge_drift: 0.0,
            growth: 1.0,
        })
    }

    pub fn config(&self) -> &SolverConfig {
        &self.config
    }

    pub fn time(&self) -> f64 {
        self.steps as f64 * self.config.dt
    }

    /// Largest dt-halving change seen so far.
    pub fn gate_defect(&self) -> f64 {
        self.gate_defect
    }

    /// Largest `|‖u(t)‖_{L²} − ‖u₀‖_{L²}|` seen at checkpoints.
    pub fn charge_drift(&self) -> f64 {
        self.charge_drift
    }

    /// Largest `‖u(t)‖_{H^{s+1}} / ‖u₀‖_{H^{s+1}}` seen at checkpoints.
    pub fn growth(&self) -> f64 {
        self.growth
    }

    /// Advances to time `t` (a multiple of the step, not before the current
    /// time) and returns the certified solution there.
    pub fn advance_to(&mut self, t: f64) -> Result<SpectralField> {
        let target = self.config.steps_to(t)?;
        if target < self.steps {
            return Err(Error::Config(format!("reference cannot go back to t = {t}")));
        }
        for _ in self.steps..target {
            self.primary.step(&mut self.state);
            self.shadow.step(&mut self.shadow_state);
            self.shadow.step(&mut self.shadow_state);
        }
        self.steps = target;
        self.certify()
    }

    fn certify(&mut self) -> Result<SpectralField> {
        let s = self.config.sobolev;
        let current = self.state.dft_forward();
        let norm = current.norm();
        if !norm.is_finite() {
            return Err(Error::ReferenceInvalid(format!(
                "non-finite solution at t = {}; outside the verified regime",
                self.time()
            )));
        }
        let defect = current.hs_distance(&self.shadow_state.dft_forward(), s)?;
        self.gate_defect = self.gate_defect.max(defect);
        if defect > self.config.tolerance {
            return Err(Error::ReferenceInvalid(format!(
                "halving the step changes the solution by {defect:.3e} in H^{s} at t = {} (tolerance {:.1e})",
                self.time(),
                self.config.tolerance
            )));
        }
        let tail = band_tail(&current, s)?;
        if tail > self.config.tolerance {
            return Err(Error::ReferenceInvalid(format!(
                "H^{s} content {tail:.3e} in the outer half of the band at t = {}; grid under-resolved",
                self.time()
            )));
        }
        self.charge_drift = self.charge_drift.max((norm - self.initial_norm).abs());
        if self.initial_upper_norm > 0.0 {
            self.growth = self.growth.max(current.hs_norm(s + 1)? / self.initial_upper_norm);
        }
        Ok(current)
    }
}

/// `H^s` norm of the modes with `|k| ≥ N/4`.
fn band_tail(u: &SpectralField, s: usize) -> Result<f64> {
    let g = *u.grid();
    let quarter = (g.points() / 4) as i64;
    let mut outer = u.clone();
    for k in 0..g.points() {
        if g.mode_number(k).abs() < quarter {
            outer.components_mut()[0][k] = Complex64::new(0.0, 0.0);
            outer.components_mut()[1][k] = Complex64::new(0.0, 0.0);
        }
    }
    outer.hs_norm(s)
}

/// Reference snapshots at requested times.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub fields: Vec<SpectralField>,
    pub gate_defect: f64,
    pub charge_drift: f64,
    pub growth: f64,
}

impl Trajectory {
    pub fn at(&self, t: f64) -> Option<&SpectralField> {
        self.times.iter().position(|&s| (s - t).abs() <= 1e-12 * t.max(1.0)).map(|i| &self.fields[i])
    }
}

/// Certified reference solution at each of `times` (ascending multiples of
/// `config.dt` within `[0, config.horizon]`).
pub fn solve_reference(
    u0: &SpectralField,
    model: &DiracModel,
    times: &[f64],
    config: SolverConfig,
) -> Result<Trajectory> {
    let mut solver = ReferenceSolver::new(u0, model, config)?;
    let mut fields = Vec::with_capacity(times.len());
    for &t in times {
        if t > config.horizon * (1.0 + 1e-12) {
            return Err(Error::Config(format!("time {t} beyond horizon {}", config.horizon)));
        }
        fields.push(solver.advance_to(t)?);
    }
    Ok(Trajectory {
        times: times.to_vec(),
        fields,
        gate_defect: solver.gate_defect(),
        charge_drift: solver.charge_drift(),
        growth: solver.growth(),
    })
}

/// `‖u_dt(T) − u_{dt/2}(T)‖_{H^s}` for each `dt`, the raw material of an
/// observed-order study.
pub fn self_convergence(
    u0: &SpectralField,
    model: &DiracModel,
    horizon: f64,
    dts: &[f64],
    scheme: Scheme,
    sobolev: usize,
) -> Result<Vec<(f64, f64)>> {
    let run = |dt: f64| -> Result<SpectralField> {
        let steps = (horizon / dt).round();
        if (steps * dt - horizon).abs() > 1e-9 * horizon.max(1.0) {
            return Err(Error::Config(format!("horizon {horizon} is not a multiple of {dt}")));
        }
        let stepper = SplitStepper::new(model.clone(), *u0.grid(), dt, scheme);
        let mut u = u0.dft_inverse();
        for _ in 0..steps as usize {
            stepper.step(&mut u);
        }
        Ok(u.dft_forward())
    };
    dts.iter()
        .map(|&dt| Ok((dt, run(dt)?.hs_distance(&run(dt / 2.0)?, sobolev)?)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{PauliVector, Polynomial};
    use crate::walk::apply_shift;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn gaussian(grid: GridSpec) -> LatticeField {
        LatticeField::from_fn(grid, |x| [c((-x * x / 2.0).exp(), 0.0), c(0.0, 0.5 * (-x * x).exp())])
    }

    #[test]
    fn transport_flow_group_law_and_identity() {
        let g = GridSpec::with_length(16.0, 128).unwrap();
        let u = gaussian(g).dft_forward();
        assert_eq!(flow_a(&u, 0.0), u);
        let ab = flow_a(&flow_a(&u, 0.3), 0.45);
        assert!(ab.sub(&flow_a(&u, 0.75)).unwrap().norm() < 1e-12);
    }

    #[test]
    fn transport_by_one_site_is_the_shift() {
        let g = GridSpec::with_length(16.0, 128).unwrap();
        let u = gaussian(g);
        let moved = flow_a(&u.dft_forward(), g.spacing()).dft_inverse();
        assert!(moved.max_site_distance(&apply_shift(&u)).unwrap() < 1e-12);
    }

    #[test]
    fn stepper_transport_matches_multiplier() {
        let g = GridSpec::with_length(16.0, 64).unwrap();
        let u = gaussian(g);
        let stepper = SplitStepper::new(DiracModel::default(), g, 0.37, Scheme::Lie);
        let mut v = u.clone();
        stepper.step(&mut v);
        let expected = flow_a(&u.dft_forward(), 0.37).dft_inverse();
        assert!(v.max_site_distance(&expected).unwrap() < 1e-13);
    }

    #[test]
    fn zero_step_is_identity() {
        let g = GridSpec::with_length(16.0, 64).unwrap();
        let model = DiracModel::new(
            CoinProfile::constant(PauliVector::new(0.0, -1.0, 0.0, 0.0)),
            vec![NonlinearCoin::from_pauli(PauliVector::new(0.0, 0.0, 0.0, 1.0), Polynomial::linear(1.0))],
        );
        let u = gaussian(g);
        assert!(lie_step(&u, &model, 0.0).max_site_distance(&u).unwrap() < 1e-15);
        assert!(strang_step(&u, &model, 0.0).max_site_distance(&u).unwrap() < 1e-15);
    }

    #[test]
    fn steps_preserve_charge() {
        let g = GridSpec::with_length(16.0, 128).unwrap();
        let model = DiracModel::new(
            CoinProfile::constant(PauliVector::new(0.0, 0.0, 1.0, 0.0)),
            vec![NonlinearCoin::from_pauli(PauliVector::new(1.0, 0.0, 0.0, 0.0), Polynomial::linear(2.0))],
        );
        let u = gaussian(g);
        for v in [lie_step(&u, &model, 0.1), strang_step(&u, &model, 0.1)] {
            assert!((v.norm() - u.norm()).abs() < 1e-12);
        }
    }

    #[test]
    fn reference_rejects_off_grid_times_and_going_back() {
        let g = GridSpec::with_length(16.0, 256).unwrap();
        let cfg = SolverConfig { dt: 0.125, scheme: Scheme::Strang, horizon: 1.0, tolerance: 1e-6, sobolev: 1 };
        let mut solver = ReferenceSolver::new(&gaussian(g).dft_forward(), &DiracModel::default(), cfg).unwrap();
        assert!(solver.advance_to(0.3).is_err());
        solver.advance_to(0.5).unwrap();
        assert!(solver.advance_to(0.25).is_err());
    }

    #[test]
    fn gate_rejects_coarse_reference() {
        let g = GridSpec::with_length(16.0, 128).unwrap();
        let model = DiracModel::new(
            CoinProfile::constant(PauliVector::new(0.0, -1.0, 0.0, 0.0)),
            vec![NonlinearCoin::from_pauli(PauliVector::new(0.0, 0.0, 0.0, 1.0), Polynomial::linear(1.0))],
        );
        let cfg = SolverConfig { dt: 0.25, scheme: Scheme::Strang, horizon: 1.0, tolerance: 1e-9, sobolev: 1 };
        let err = solve_reference(&gaussian(g).dft_forward(), &model, &[1.0], cfg).unwrap_err();
        assert!(matches!(err, Error::ReferenceInvalid(_)));
    }

    #[test]
    fn gate_rejects_under_resolved_grid() {
        let g = GridSpec::with_length(16.0, 16).unwrap();
        let cfg = SolverConfig { dt: 0.5, scheme: Scheme::Strang, horizon: 1.0, tolerance: 1e-9, sobolev: 1 };
        let u0 = LatticeField::from_fn(g, |x| [c((-4.0 * x * x).exp(), 0.0), c(0.0, 0.0)]).dft_forward();
        let err = solve_reference(&u0, &DiracModel::default(), &[0.5], cfg).unwrap_err();
        assert!(err.to_string().contains("under-resolved"), "{err}");
    }

    #[test]
    fn scheme_parses() {
        assert_eq!("lie".parse::<Scheme>().unwrap(), Scheme::Lie);
        assert_eq!("strang".parse::<Scheme>().unwrap(), Scheme::Strang);
        assert!("rk4".parse::<Scheme>().is_err());
    }
}
