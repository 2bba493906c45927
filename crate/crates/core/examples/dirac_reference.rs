//! The certified Strang reference for the Thirring model.

use nlqw::dirac::{ReferenceSolver, Scheme, SolverConfig};
use nlqw::lab::{dirac_model, Preset};
use nlqw::spectral::{GridSpec, LatticeField};
use num_complex::Complex64;

fn main() -> nlqw::Result<()> {
    let grid = GridSpec::with_length(32.0, 512)?;
    let u0 = LatticeField::from_fn(grid, |x| {
        let e = (-x * x / 2.0).exp();
        [Complex64::new(e, 0.0), Complex64::new(0.0, 0.5 * e)]
    })
    .dft_forward();
    let model = dirac_model(Preset::Thirring, 1.0, 1.0);
    let config = SolverConfig { dt: 2f64.powi(-14), scheme: Scheme::Strang, horizon: 1.0, tolerance: 1e-8, sobolev: 1 };
    let mut solver = ReferenceSolver::new(&u0, &model, config)?;
    for k in 1..=4 {
        let u = solver.advance_to(k as f64 / 4.0)?;
        println!("t = {:.2}  H^1 norm {:.10}", solver.time(), u.hs_norm(1)?);
    }
    println!("halving defect {:.2e}", solver.gate_defect());
    println!("charge drift   {:.2e}", solver.charge_drift());
    println!("H^2 growth     {:.4}", solver.growth());
    Ok(())
}
