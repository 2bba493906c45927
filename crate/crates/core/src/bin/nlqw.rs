use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use nlqw::dirac::{ReferenceSolver, Scheme, SolverConfig};
use nlqw::lab::{
    dirac_model, emit_invariants, emit_report, initial_field, parse_config, run_convergence, run_invariant_suite,
    walk_model, ExperimentConfig, ReportFormat,
};
use nlqw::spectral::write_snapshot;
use nlqw::walk::WalkState;
use nlqw::Error;

#[derive(Parser)]
#[command(version, about = "Nonlinear quantum walks and their Dirac limit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Measure the convergence rate of the walk to the Dirac solution.
    Converge(Common),
    /// Write walk and reference snapshots at the finest delta.
    Simulate(Common),
    /// Run the invariant suite.
    Check(Common),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Lie,
    Strang,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
    Both,
}

#[derive(Args)]
struct Common {
    config: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    drop_coarsest: bool,
    #[arg(long, value_enum)]
    scheme: Option<SchemeArg>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

impl Common {
    fn load(&self) -> nlqw::Result<ExperimentConfig> {
        let mut cfg = parse_config(&self.config)?;
        if let Some(out) = &self.out {
            cfg.output_dir = out.clone();
        }
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        cfg.drop_coarsest |= self.drop_coarsest;
        if let Some(s) = self.scheme {
            cfg.reference_scheme = match s {
                SchemeArg::Lie => Scheme::Lie,
                SchemeArg::Strang => Scheme::Strang,
            };
        }
        if let Some(f) = self.format {
            cfg.format = match f {
                FormatArg::Csv => ReportFormat::Csv,
                FormatArg::Json => ReportFormat::Json,
                FormatArg::Both => ReportFormat::Both,
            };
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn print_written(paths: &[PathBuf]) {
    for p in paths {
        println!("wrote {}", p.display());
    }
}

fn converge(cfg: &ExperimentConfig) -> nlqw::Result<ExitCode> {
    let report = run_convergence(cfg)?;
    println!("{:>12} {:>6} {:>14} {:>10}", "delta", "steps", "sup_error_hs", "walltime_s");
    for r in &report.rows {
        println!("{:>12.6e} {:>6} {:>14.6e} {:>10.3}", r.delta, r.steps, r.sup_error_hs, r.walltime_s);
    }
    if let Some(fit) = &report.fit {
        println!("slope {:.4}  intercept {:.4}  residual {:.2e}", fit.slope, fit.intercept, fit.residual);
    }
    println!("reference gate: defect {:.2e} (tolerance {:.0e})", report.gate.max_defect, report.gate.tolerance);
    for w in &report.warnings {
        println!("warning: {w}");
    }
    print_written(&emit_report(&report, cfg.format, &cfg.output_dir)?);
    Ok(ExitCode::SUCCESS)
}

fn simulate(cfg: &ExperimentConfig) -> nlqw::Result<ExitCode> {
    let master = cfg.master_grid()?;
    let delta = master.spacing();
    let model = dirac_model(cfg.preset, cfg.mass, cfg.coupling);
    let walk = walk_model(&model, master);
    let u0 = initial_field(cfg, master).dft_forward();
    let mut state = WalkState::initial(u0.dft_inverse());
    let mut reference = ReferenceSolver::new(
        &u0.resample(cfg.reference_grid()?)?,
        &model,
        SolverConfig {
            dt: cfg.reference_step(),
            scheme: cfg.reference_scheme,
            horizon: cfg.final_time,
            tolerance: cfg.reference_tolerance,
            sobolev: cfg.sobolev,
        },
    )?;
    std::fs::create_dir_all(&cfg.output_dir)
        .map_err(|source| Error::Write { path: cfg.output_dir.clone(), source })?;
    let steps = cfg.steps(delta);
    let count = cfg.snapshots.max(1);
    let mut written = Vec::new();
    for k in 0..=count {
        let target = (k * steps + count / 2) / count;
        while state.step < target {
            state.advance(&walk)?;
        }
        let reference_field = reference.advance_to(target as f64 * delta)?.dft_inverse();
        for (name, field) in [("walk", &state.field), ("reference", &reference_field)] {
            let path = cfg.output_dir.join(format!("{name}_{target:05}.dat"));
            write_file(&path, |w| write_snapshot(field, w))?;
            written.push(path);
        }
    }
    print_written(&written);
    Ok(ExitCode::SUCCESS)
}

fn write_file(path: &Path, f: impl FnOnce(&mut std::io::BufWriter<std::fs::File>) -> nlqw::Result<()>) -> nlqw::Result<()> {
    let file = std::fs::File::create(path).map_err(|source| Error::Write { path: path.to_path_buf(), source })?;
    f(&mut std::io::BufWriter::new(file))
}

fn check(cfg: &ExperimentConfig) -> nlqw::Result<ExitCode> {
    let report = run_invariant_suite(cfg)?;
    for c in &report.checks {
        let status = match (c.passed, c.blocking) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "note",
        };
        println!("{status} {:<40} {:>10.3e} <= {:<8.1e} {}", c.name, c.measured, c.tolerance, c.detail);
    }
    print_written(&emit_invariants(&report, cfg.format, &cfg.output_dir)?);
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Converge(c) => c.load().and_then(|cfg| converge(&cfg)),
        Command::Simulate(c) => c.load().and_then(|cfg| simulate(&cfg)),
        Command::Check(c) => c.load().and_then(|cfg| check(&cfg)),
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(match e {
            Error::Config(_) | Error::SobolevIndex(_) => 4,
            Error::ReferenceInvalid(_) => 3,
            _ => 1,
        })
    })
}
