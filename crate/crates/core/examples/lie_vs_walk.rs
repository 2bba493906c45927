//! One walk step equals one Lie step of the continuum flows at dt = δ.

use nlqw::dirac::lie_step;
use nlqw::lab::{dirac_model, walk_model, Preset};
use nlqw::spectral::{GridSpec, LatticeField};
use nlqw::walk::{walk_step, WalkState};
use num_complex::Complex64;

fn main() -> nlqw::Result<()> {
    for preset in Preset::ALL {
        let model = dirac_model(preset, 1.0, 1.0);
        let mut worst = 0.0f64;
        for k in [4, 6, 8] {
            let delta = 2f64.powi(-k);
            let grid = GridSpec::new(delta, (16.0 / delta) as usize)?;
            let u = LatticeField::from_fn(grid, |x| {
                let e = (-x * x).exp();
                [Complex64::new(e, 0.2 * e), Complex64::new(-0.5 * e, e * x)]
            });
            let walked = walk_step(&WalkState::initial(u.clone()), &walk_model(&model, grid))?.field;
            worst = worst.max(lie_step(&u, &model, delta).max_site_distance(&walked)?);
        }
        println!("{:<14} {:.2e}", preset.name(), worst);
    }
    Ok(())
}
