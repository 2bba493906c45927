//! The Hadamard walk from a localized state, printed as a probability profile.

use nlqw::coin::{CoinProfile, PauliVector};
use nlqw::spectral::{GridSpec, LatticeField};
use nlqw::walk::{evolve, WalkModel};
use num_complex::Complex64;

fn main() -> nlqw::Result<()> {
    let grid = GridSpec::new(1.0, 128)?;
    let model = WalkModel::linear(grid, CoinProfile::constant(PauliVector::hadamard()));
    let mut u = LatticeField::zeros(grid);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    u.set(0, [Complex64::new(r, 0.0), Complex64::new(0.0, r)]);

    let state = evolve(u, &model, 50)?;
    println!("norm after {} steps: {:.15}", state.step, state.field.norm());
    for n in (0..grid.points()).step_by(2) {
        let v = state.field.get(n);
        let p = v[0].norm_sqr() + v[1].norm_sqr();
        if p > 1e-4 {
            println!("{:>5} {:.5} {}", grid.position(n), p, "#".repeat((p * 400.0) as usize));
        }
    }
    Ok(())
}
