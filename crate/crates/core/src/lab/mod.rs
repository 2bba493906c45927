//! Experiments: matched walk/equation models, convergence runs against a
//! certified reference, rate fits, the invariant suite and report files.

mod config;
mod convergence;
mod fit;
mod invariants;
mod presets;
mod report;

pub use config::{parse_config, ExperimentConfig, ReportFormat, MAX_NONLINEAR_AMPLITUDE};
pub use convergence::{error_at, run_convergence, ConvergenceReport, ConvergenceRow, GateStatus};
pub use fit::{fit_rate, RateFit};
pub use invariants::{
    free_dispersion_defect, lattice_continuum_defect, run_invariant_suite, run_invariant_suite_with,
    self_convergence_slope, InvariantCheck, InvariantReport, StepFn,
};
pub use presets::{dirac_model, initial_field, initial_profile, walk_model, InitialShape, Preset};
pub use report::{
    emit_invariants, emit_report, read_csv, summary_json, write_csv, CONVERGENCE_CSV, CONVERGENCE_JSON, CSV_HEADER,
    INVARIANTS_CSV, INVARIANTS_JSON,
};
