//! A reduced convergence study; `nlqw converge` runs the full-size one.

use nlqw::lab::{run_convergence, ExperimentConfig, Preset};

fn main() -> nlqw::Result<()> {
    let preset = std::env::args().nth(1).map_or(Ok(Preset::GrossNeveu), |s| s.parse())?;
    let mut cfg = ExperimentConfig::new(preset);
    cfg.length = 32.0;
    cfg.final_time = 0.5;
    cfg.deltas = (3..=7).map(|k| 2f64.powi(-k)).collect();
    cfg.reference_points = 512;
    cfg.reference_tolerance = 1e-8;

    let report = run_convergence(&cfg)?;
    println!("{:>10} {:>6} {:>12}", "delta", "steps", "error");
    for r in &report.rows {
        println!("{:>10} {:>6} {:>12.4e}", r.delta, r.steps, r.sup_error_hs);
    }
    if let Some(fit) = report.fit {
        println!("fitted order {:.3}", fit.slope);
    }
    println!("reference halving defect {:.2e}", report.gate.max_defect);
    Ok(())
}
