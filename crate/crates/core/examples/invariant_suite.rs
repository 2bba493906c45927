//! Runs the invariant suite for one preset and lists each check.

use nlqw::lab::{run_invariant_suite, ExperimentConfig, Preset};

fn main() -> nlqw::Result<()> {
    let report = run_invariant_suite(&ExperimentConfig::new(Preset::Npr))?;
    for c in &report.checks {
        let mark = if c.passed { "ok " } else if c.blocking { "BAD" } else { "?  " };
        println!("{mark} {:<8} {:<36} {:.2e}", c.module, c.name, c.measured);
    }
    println!("suite passed: {}", report.passed());
    Ok(())
}
