//! Shannon interpolation of lattice data, band projection and Sobolev norms.

use nlqw::spectral::{sample_lattice, GridSpec, LatticeField};
use num_complex::Complex64;

fn main() -> nlqw::Result<()> {
    let lattice = GridSpec::with_length(16.0, 64)?;
    let u = LatticeField::from_fn(lattice, |x| {
        let e = (-x * x / 2.0).exp();
        [Complex64::new(e, 0.0), Complex64::new(0.0, e * x)]
    });

    let fine = lattice.refine(8)?;
    let iu = u.interpolate_onto(fine)?;
    println!("lattice norm      {:.12}", u.norm());
    println!("interpolant norm  {:.12}", iu.norm());
    println!("resampled error   {:.3e}", sample_lattice(&iu, lattice)?.max_site_distance(&u)?);

    for s in 0..=3 {
        println!("H^{s} norm         {:.6}", iu.hs_norm(s)?);
    }

    let coarse = iu.project_band(0.5)?;
    println!("tail above band of step 0.5 in H^1: {:.3e}", iu.hs_distance(&coarse, 1)?);

    let xs = [0.1, 0.37, 1.0];
    for (x, v) in xs.iter().zip(u.interpolate_at(&xs)) {
        println!("u({x}) = ({:.6}, {:.6})", v[0], v[1]);
    }
    Ok(())
}
