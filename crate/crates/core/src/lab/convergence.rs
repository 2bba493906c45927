use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::dirac::{DiracModel, ReferenceSolver, SolverConfig};
use crate::error::{Error, Result};
use crate::spectral::{sample_lattice, GridSpec, SpectralField};
use crate::walk::{WalkModel, WalkState};

use super::config::ExperimentConfig;
use super::fit::{fit_rate, RateFit};
use super::presets::{dirac_model, initial_field, walk_model};

/// One line of the convergence table.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceRow {
    pub delta: f64,
    pub steps: usize,
    pub sup_error_hs: f64,
    pub walltime_s: f64,
}

/// Outcome of the reference solver's self-checks.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GateStatus {
    pub passed: bool,
    pub tolerance: f64,
    /// Largest `H^s` change seen when halving the reference step.
    pub max_defect: f64,
    pub charge_drift: f64,
    /// Largest `‖u(t)‖_{H^{s+1}} / ‖u₀‖_{H^{s+1}}` seen.
    pub growth: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvergenceReport {
    /// Sorted by δ, largest first.
    pub rows: Vec<ConvergenceRow>,
    /// Walk step at which each row's supremum was attained.
    pub worst_steps: Vec<usize>,
    pub fit: Option<RateFit>,
    pub gate: GateStatus,
    pub reference_walltime_s: f64,
    pub warnings: Vec<String>,
    pub config: ExperimentConfig,
}

impl ConvergenceReport {
    pub fn errors(&self) -> Vec<f64> {
        self.rows.iter().map(|r| r.sup_error_hs).collect()
    }
}

struct Setup {
    master: GridSpec,
    model: DiracModel,
    initial: SpectralField,
    solver: SolverConfig,
}

impl Setup {
    fn new(config: &ExperimentConfig) -> Result<Self> {
        config.validate()?;
        let master = config.master_grid()?;
        Ok(Self {
            master,
            model: dirac_model(config.preset, config.mass, config.coupling),
            initial: initial_field(config, master).dft_forward(),
            solver: SolverConfig {
                dt: config.reference_step(),
                scheme: config.reference_scheme,
                horizon: config.final_time,
                tolerance: config.reference_tolerance,
                sobolev: config.sobolev,
            },
        })
    }

    fn reference(&self, config: &ExperimentConfig) -> Result<ReferenceSolver> {
        let u0 = self.initial.resample(config.reference_grid()?)?;
        ReferenceSolver::new(&u0, &self.model, self.solver)
    }

    /// `I_δ⁻¹ j_δ u₀` on the lattice of spacing `delta`, and the walk there.
    fn level(&self, delta: f64) -> Result<(WalkModel, WalkState)> {
        let stride = (delta / self.master.spacing()).round() as usize;
        let lattice = self.master.coarsen(stride)?;
        let u0 = sample_lattice(&self.initial.project_band(delta)?, lattice)?;
        Ok((walk_model(&self.model, lattice), WalkState::initial(u0)))
    }
}

struct Level {
    stride: usize,
    model: WalkModel,
    state: WalkState,
    sup: f64,
    worst: usize,
    elapsed: Duration,
}

fn walk_error(state: &WalkState, reference: &SpectralField, s: usize) -> Result<f64> {
    state.field.dft_forward().hs_distance(reference, s)
}

/// Runs every walk of the δ-list against one certified reference trajectory
/// and records `sup_m ‖I_δ U_δ(m) − u(mδ)‖_{H^s}` per δ.
///
/// The reference is advanced in lock-step with the finest walk, so no
/// trajectory is stored.
pub fn run_convergence(config: &ExperimentConfig) -> Result<ConvergenceReport> {
    let setup = Setup::new(config)?;
    let s = config.sobolev;
    let mut levels = Vec::with_capacity(config.deltas.len());
    for &delta in &config.deltas {
        let start = Instant::now();
        let (model, state) = setup.level(delta)?;
        levels.push(Level {
            stride: (delta / setup.master.spacing()).round() as usize,
            model,
            state,
            sup: 0.0,
            worst: 0,
            elapsed: start.elapsed(),
        });
    }

    let mut solver = setup.reference(config)?;
    let mut reference_time = Duration::ZERO;
    let fine_steps = config.steps(setup.master.spacing());
    for j in 0..=fine_steps {
        let start = Instant::now();
        let reference = solver.advance_to(j as f64 * setup.master.spacing())?;
        reference_time += start.elapsed();
        for level in levels.iter_mut().filter(|l| j % l.stride == 0) {
            let start = Instant::now();
            if j > 0 {
                level.state.advance(&level.model)?;
            }
            let e = walk_error(&level.state, &reference, s)?;
            if !e.is_finite() {
                return Err(Error::ReferenceInvalid(format!("non-finite walk error at step {}", level.state.step)));
            }
            if e > level.sup {
                level.sup = e;
                level.worst = level.state.step;
            }
            level.elapsed += start.elapsed();
        }
    }

    let rows: Vec<ConvergenceRow> = config
        .deltas
        .iter()
        .zip(&levels)
        .map(|(&delta, l)| ConvergenceRow {
            delta,
            steps: config.steps(delta),
            sup_error_hs: l.sup,
            walltime_s: l.elapsed.as_secs_f64(),
        })
        .collect();

    let mut warnings = Vec::new();
    for pair in rows.windows(2) {
        if pair[1].sup_error_hs >= pair[0].sup_error_hs {
            let w = format!(
                "error does not decrease from delta = {} ({:.3e}) to delta = {} ({:.3e})",
                pair[0].delta, pair[0].sup_error_hs, pair[1].delta, pair[1].sup_error_hs
            );
            log::warn!("{w}");
            warnings.push(w);
        }
    }
    let fit_rows: Vec<(f64, f64)> = rows
        .iter()
        .skip(usize::from(config.drop_coarsest))
        .map(|r| (r.delta, r.sup_error_hs))
        .collect();
    let fit = match fit_rate(&fit_rows) {
        Ok(f) => Some(f),
        Err(e) => {
            warnings.push(format!("no rate fit: {e}"));
            None
        }
    };

    Ok(ConvergenceReport {
        rows,
        worst_steps: levels.iter().map(|l| l.worst).collect(),
        fit,
        gate: GateStatus {
            passed: true,
            tolerance: config.reference_tolerance,
            max_defect: solver.gate_defect(),
            charge_drift: solver.charge_drift(),
            growth: solver.growth(),
        },
        reference_walltime_s: reference_time.as_secs_f64(),
        warnings,
        config: config.clone(),
    })
}

/// The error of the walk with spacing `delta` after `step` steps, computed
/// from scratch.
pub fn error_at(config: &ExperimentConfig, delta: f64, step: usize) -> Result<f64> {
    let setup = Setup::new(config)?;
    let (model, mut state) = setup.level(delta)?;
    let mut solver = setup.reference(config)?;
    let stride = (delta / setup.master.spacing()).round() as usize;
    for _ in 0..step {
        state.advance(&model)?;
    }
    let reference = solver.advance_to((step * stride) as f64 * setup.master.spacing())?;
    walk_error(&state, &reference, config.sobolev)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lab::presets::Preset;

    fn small(preset: Preset) -> ExperimentConfig {
        let mut cfg = ExperimentConfig::new(preset);
        cfg.length = 32.0;
        cfg.final_time = 0.25;
        cfg.deltas = vec![0.125, 0.0625, 0.03125];
        cfg.reference_points = 256;
        cfg.reference_step = Some(2f64.powi(-10));
        cfg.reference_tolerance = 1e-6;
        cfg
    }

    #[test]
    fn transport_is_exact() {
        let report = run_convergence(&small(Preset::Transport)).unwrap();
        assert_eq!(report.rows.len(), 3);
        for r in &report.rows {
            assert!(r.sup_error_hs < 1e-10, "{r:?}");
        }
    }

    #[test]
    fn rows_and_worst_step() {
        let cfg = small(Preset::GrossNeveu);
        let report = run_convergence(&cfg).unwrap();
        assert_eq!(report.rows.iter().map(|r| r.steps).collect::<Vec<_>>(), vec![2, 4, 8]);
        assert!(report.rows.iter().all(|r| r.sup_error_hs > 0.0));
        assert!(report.gate.passed);
        let (row, m) = (report.rows[1], report.worst_steps[1]);
        assert_eq!(error_at(&cfg, row.delta, m).unwrap(), row.sup_error_hs);
    }

    #[test]
    fn lie_reference_fails_the_gate() {
        let mut cfg = small(Preset::Free);
        cfg.reference_scheme = crate::dirac::Scheme::Lie;
        cfg.reference_tolerance = 1e-9;
        assert!(matches!(run_convergence(&cfg), Err(Error::ReferenceInvalid(_))));
    }
}
