use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::coin::{CoinProfile, NonlinearCoin, PauliVector, Polynomial, Shape};
use crate::dirac::DiracModel;
use crate::spectral::{GridSpec, LatticeField};
use crate::walk::WalkModel;

use super::config::ExperimentConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preset {
    /// Constant coin `−mσ₁`, no nonlinearity.
    Free,
    /// Constant coin with `e^{-is·σ} = H`, no nonlinearity.
    Hadamard,
    /// `σ₂` rotation by a tanh step `θ(x)` from `−m` to `m`.
    PositionCoin,
    /// Hadamard coin with the two nonlinear coins `(σ₀ ± σ₃)/2`, `g(r) = −λr`.
    Npr,
    /// Mass `mσ₂`, nonlinear coin `γ = σ₃`, `g(r) = λr`.
    GrossNeveu,
    /// Mass `mσ₂`, nonlinear coin `γ = σ₀`, `g(r) = λr`.
    Thirring,
    /// Coupled-mode equations: potential `V(x)σ₀` and coupling `κ(x)σ₁` as
    /// tanh profiles, with self- and cross-phase modulation.
    CoupledMode,
    /// No coin and no nonlinearity: both walk and equation are pure transport.
    Transport,
}

impl Preset {
    pub const ALL: [Preset; 8] = [
        Preset::Free,
        Preset::Hadamard,
        Preset::PositionCoin,
        Preset::Npr,
        Preset::GrossNeveu,
        Preset::Thirring,
        Preset::CoupledMode,
        Preset::Transport,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Free => "free",
            Preset::Hadamard => "hadamard",
            Preset::PositionCoin => "position-coin",
            Preset::Npr => "npr",
            Preset::GrossNeveu => "gross-neveu",
            Preset::Thirring => "thirring",
            Preset::CoupledMode => "coupled-mode",
            Preset::Transport => "transport",
        }
    }

    pub fn is_nonlinear(&self) -> bool {
        matches!(self, Preset::Npr | Preset::GrossNeveu | Preset::Thirring | Preset::CoupledMode)
    }
}

impl std::str::FromStr for Preset {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Preset::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| crate::Error::Config(format!("unknown preset `{s}`")))
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitialShape {
    /// `(A e^{−(x−c)²/2w²}, 0)`.
    #[default]
    Gaussian,
    /// `(A exp(1 − 1/(1 − r²)), 0)` with `r = |x − c|/w`.
    Bump,
}

/// The equation's coin and nonlinear coins for `preset` with mass `mass` and
/// coupling `coupling`. Walks are built from the same value, see [`walk_model`].
pub fn dirac_model(preset: Preset, mass: f64, coupling: f64) -> DiracModel {
    let sigma = |a: usize| {
        let mut v = [0.0; 4];
        v[a] = 1.0;
        PauliVector(v)
    };
    let linear = |lambda: f64| Polynomial::linear(lambda);
    match preset {
        Preset::Free => DiracModel::new(CoinProfile::constant(sigma(1).scaled(-mass)), Vec::new()),
        Preset::Hadamard => DiracModel::new(CoinProfile::constant(PauliVector::hadamard()), Vec::new()),
        Preset::PositionCoin => DiracModel::new(
            CoinProfile::default().with_term(2, Shape::Tanh { left: -mass, right: mass, width: 1.0, center: 0.0 }),
            Vec::new(),
        ),
        Preset::Npr => DiracModel::new(
            CoinProfile::constant(PauliVector::hadamard()),
            vec![
                NonlinearCoin::from_pauli(PauliVector::new(0.5, 0.0, 0.0, 0.5), linear(-coupling)),
                NonlinearCoin::from_pauli(PauliVector::new(0.5, 0.0, 0.0, -0.5), linear(-coupling)),
            ],
        ),
        Preset::GrossNeveu => DiracModel::new(
            CoinProfile::constant(sigma(2).scaled(mass)),
            vec![NonlinearCoin::from_pauli(sigma(3), linear(coupling))],
        ),
        Preset::Thirring => DiracModel::new(
            CoinProfile::constant(sigma(2).scaled(mass)),
            vec![NonlinearCoin::from_pauli(sigma(0), linear(coupling))],
        ),
        Preset::CoupledMode => DiracModel::new(
            CoinProfile::default()
                .with_term(0, Shape::Tanh { left: 0.0, right: 0.5 * mass, width: 2.0, center: 0.0 })
                .with_term(1, Shape::Tanh { left: mass, right: 0.5 * mass, width: 2.0, center: 0.0 }),
            vec![
                NonlinearCoin::from_pauli(sigma(0), linear(2.0 * coupling)),
                NonlinearCoin::from_pauli(PauliVector::new(0.5, 0.0, 0.0, 0.5), linear(-coupling)),
                NonlinearCoin::from_pauli(PauliVector::new(0.5, 0.0, 0.0, -0.5), linear(-coupling)),
            ],
        ),
        Preset::Transport => DiracModel::default(),
    }
}

/// The walk on `grid` whose continuum limit is `model`.
pub fn walk_model(model: &DiracModel, grid: GridSpec) -> WalkModel {
    WalkModel::new(grid, model.coin.clone(), model.nonlinear.clone())
}

pub fn initial_profile(shape: InitialShape, amplitude: f64, width: f64, center: f64) -> impl Fn(f64) -> f64 {
    let bump = Shape::Bump { amplitude, radius: width, center };
    move |x| match shape {
        InitialShape::Gaussian => amplitude * (-(x - center).powi(2) / (2.0 * width * width)).exp(),
        InitialShape::Bump => bump.eval(x),
    }
}

/// Samples of the configured initial datum on `grid`.
pub fn initial_field(config: &ExperimentConfig, grid: GridSpec) -> LatticeField {
    let f = initial_profile(config.initial, config.amplitude, config.width, config.center);
    LatticeField::from_fn(grid, |x| [Complex64::new(f(x), 0.0), Complex64::new(0.0, 0.0)])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coin::{pauli_exp, Matrix2};

    #[test]
    fn names_round_trip_through_serde() {
        for p in Preset::ALL {
            let json = serde_json::to_string(&p).unwrap();
            assert_eq!(json, format!("\"{}\"", p.name()));
            assert_eq!(serde_json::from_str::<Preset>(&json).unwrap(), p);
        }
    }

    #[test]
    fn npr_has_two_projector_coins() {
        let m = dirac_model(Preset::Npr, 1.0, 1.5);
        assert_eq!(m.nonlinear.len(), 2);
        let p1 = Matrix2::from_real(1.0, 0.0, 0.0, 0.0);
        let p2 = Matrix2::from_real(0.0, 0.0, 0.0, 1.0);
        assert!((*m.nonlinear[0].gamma().matrix() - p1).norm_inf() < 1e-15);
        assert!((*m.nonlinear[1].gamma().matrix() - p2).norm_inf() < 1e-15);
        assert_eq!(m.nonlinear[0].g().eval(2.0), -3.0);
        let r = std::f64::consts::FRAC_1_SQRT_2;
        let h = Matrix2::from_real(r, r, r, -r);
        assert!((pauli_exp(&m.coin.eval(0.3), 1.0) - h).norm_inf() < 1e-15);
    }

    #[test]
    fn linear_presets_have_no_nonlinear_coin() {
        for p in Preset::ALL {
            let m = dirac_model(p, 1.0, 1.0);
            assert_eq!(m.nonlinear.is_empty(), !p.is_nonlinear(), "{p}");
        }
    }

    #[test]
    fn initial_shapes() {
        let g = initial_profile(InitialShape::Gaussian, 2.0, 0.5, 1.0);
        assert_eq!(g(1.0), 2.0);
        assert!((g(1.5) - 2.0 * (-0.5f64).exp()).abs() < 1e-15);
        let b = initial_profile(InitialShape::Bump, 1.0, 2.0, 0.0);
        assert_eq!(b(0.0), 1.0);
        assert_eq!(b(2.0), 0.0);
    }
}
