use serde::{Deserialize, Serialize};

use super::{pauli_exp, Matrix2, PauliVector};
use crate::spectral::GridSpec;

/// Scalar shape added to one component of a coin profile.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Shape {
    /// `left + (right − left)(1 + tanh((x − center)/width))/2`.
    Tanh { left: f64, right: f64, width: f64, center: f64 },
    /// `amplitude·exp(1 − 1/(1 − r²))` for `r = |x − center|/radius < 1`, zero outside.
    Bump { amplitude: f64, radius: f64, center: f64 },
}

impl Shape {
    pub fn eval(&self, x: f64) -> f64 {
        match *self {
            Shape::Tanh { left, right, width, center } => {
                left + (right - left) * 0.5 * (1.0 + ((x - center) / width).tanh())
            }
            Shape::Bump { amplitude, radius, center } => {
                let r = (x - center) / radius;
                if r.abs() >= 1.0 {
                    0.0
                } else {
                    amplitude * (1.0 - 1.0 / (1.0 - r * r)).exp()
                }
            }
        }
    }

    pub fn sup_bound(&self) -> f64 {
        match *self {
            Shape::Tanh { left, right, .. } => left.abs().max(right.abs()),
            Shape::Bump { amplitude, .. } => amplitude.abs(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileTerm {
    pub component: usize,
    pub shape: Shape,
}

/// The coin function `s: R → R⁴`, built from a constant part plus shaped terms.
///
/// Profiles are evaluated at torus coordinates in `[-X/2, X/2)`. A tanh step
/// therefore jumps back at the seam `±X/2`; experiments keep their data far
/// from the seam.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoinProfile {
    pub base: PauliVector,
    pub terms: Vec<ProfileTerm>,
}

impl CoinProfile {
    pub fn constant(base: PauliVector) -> Self {
        Self { base, terms: Vec::new() }
    }

    pub fn with_term(mut self, component: usize, shape: Shape) -> Self {
        assert!(component < 4, "coin component {component} out of range");
        self.terms.push(ProfileTerm { component, shape });
        self
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn eval(&self, x: f64) -> PauliVector {
        let mut s = self.base;
        for term in &self.terms {
            s.0[term.component] += term.shape.eval(x);
        }
        s
    }

    /// Upper bound on `max_α sup_x |s_α(x)|`.
    pub fn sup_bound(&self) -> f64 {
        let mut bound = self.base.0.map(f64::abs);
        for term in &self.terms {
            bound[term.component] += term.shape.sup_bound();
        }
        bound.into_iter().fold(0.0, f64::max)
    }
}

/// Per-site coin matrices `e^{-it s(x_n)·σ}` for one grid and one time.
#[derive(Clone, Debug, PartialEq)]
pub struct CoinField {
    grid: GridSpec,
    time: f64,
    matrices: Vec<Matrix2>,
}

impl CoinField {
    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn matrices(&self) -> &[Matrix2] {
        &self.matrices
    }
}

pub fn eval_coin_field(profile: &CoinProfile, grid: GridSpec, t: f64) -> CoinField {
    let matrices = if profile.is_constant() {
        vec![pauli_exp(&profile.base, t); grid.points()]
    } else {
        (0..grid.points()).map(|n| pauli_exp(&profile.eval(grid.position(n)), t)).collect()
    };
    CoinField { grid, time: t, matrices }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_profile_gives_identical_sites() {
        let g = GridSpec::new(0.5, 16).unwrap();
        let f = eval_coin_field(&CoinProfile::constant(PauliVector::new(0.1, -1.0, 0.0, 0.3)), g, 0.5);
        assert!(f.matrices().windows(2).all(|w| w[0] == w[1]));
    }

    #[test]
    fn position_dependent_rotation() {
        let g = GridSpec::with_length(16.0, 64).unwrap();
        let theta = Shape::Tanh { left: -0.5, right: 1.0, width: 1.0, center: 0.0 };
        let profile = CoinProfile::default().with_term(2, theta.clone());
        let t = 0.8;
        let f = eval_coin_field(&profile, g, t);
        for n in 0..g.points() {
            // e^{-itθσ₂} = R(tθ)
            let a = t * theta.eval(g.position(n));
            let r = Matrix2::from_real(a.cos(), -a.sin(), a.sin(), a.cos());
            assert!((f.matrices()[n] - r).norm_inf() < 1e-15);
        }
    }

    #[test]
    fn bump_is_compactly_supported() {
        let b = Shape::Bump { amplitude: 2.0, radius: 1.5, center: 1.0 };
        assert_eq!(b.eval(2.5), 0.0);
        assert_eq!(b.eval(-0.6), 0.0);
        assert_eq!(b.eval(1.0), 2.0);
        assert!(b.eval(2.4) > 0.0);
    }

    #[test]
    fn sup_bound_dominates_samples() {
        let p = CoinProfile::constant(PauliVector::new(0.0, 0.5, 0.0, 0.0))
            .with_term(1, Shape::Tanh { left: 0.0, right: -2.0, width: 0.7, center: 3.0 })
            .with_term(0, Shape::Bump { amplitude: 1.0, radius: 2.0, center: 0.0 });
        let bound = p.sup_bound();
        for i in -100..100 {
            let s = p.eval(i as f64 * 0.1);
            assert!(s.0.iter().all(|v| v.abs() <= bound + 1e-15));
        }
    }
}
