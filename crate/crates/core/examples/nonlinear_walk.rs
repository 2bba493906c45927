//! A Gross-Neveu walk: the nonlinear coin acts site by site before coin and shift.

use nlqw::lab::{dirac_model, walk_model, Preset};
use nlqw::spectral::{GridSpec, LatticeField};
use nlqw::walk::WalkState;
use num_complex::Complex64;

fn main() -> nlqw::Result<()> {
    let delta = 2f64.powi(-6);
    let grid = GridSpec::new(delta, (32.0 / delta) as usize)?;
    let model = walk_model(&dirac_model(Preset::GrossNeveu, 1.0, 2.0), grid);
    let u0 = LatticeField::from_fn(grid, |x| {
        let e = 1.5 * (-x * x / 2.0).exp();
        [Complex64::new(e, 0.0), Complex64::new(0.0, 0.0)]
    });

    let mut state = WalkState::initial(u0.clone());
    let n0 = u0.norm();
    for _ in 0..4 {
        for _ in 0..16 {
            state.advance(&model)?;
        }
        let v = &state.field;
        let (mut upper, mut lower) = (0.0, 0.0);
        for n in 0..grid.points() {
            upper += delta * v.get(n)[0].norm_sqr();
            lower += delta * v.get(n)[1].norm_sqr();
        }
        println!(
            "t = {:.3}  norm drift {:.1e}  |u1|^2 = {upper:.6}  |u2|^2 = {lower:.6}",
            state.step as f64 * delta,
            v.norm() - n0
        );
    }
    Ok(())
}
