use num_complex::Complex64;

use super::{hermitian_phase, Hermitian2, PauliVector};
use crate::spectral::Spinor;

/// The real function `g` of a nonlinear coin, as polynomial coefficients
/// `g(r) = Σ_k c_k r^k`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Polynomial {
    coefficients: Vec<f64>,
}

impl Polynomial {
    pub fn new(coefficients: Vec<f64>) -> Self {
        Self { coefficients }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `g(r) = λr`.
    pub fn linear(coupling: f64) -> Self {
        Self::new(vec![0.0, coupling])
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.iter().all(|&c| c == 0.0)
    }

    pub fn eval(&self, r: f64) -> f64 {
        self.coefficients.iter().rev().fold(0.0, |acc, &c| acc * r + c)
    }

    pub fn derivative(&self, r: f64) -> f64 {
        self.coefficients
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, &c)| acc * r + k as f64 * c)
    }
}

/// The state-dependent coin `u(x) ↦ e^{-it g(⟨u(x), γu(x)⟩) γ} u(x)`.
///
/// The phase is always written with the `e^{-i…}` sign; models usually
/// quoted with `e^{+i…}` are encoded by negating `g`.
#[derive(Clone, Debug, PartialEq)]
pub struct NonlinearCoin {
    gamma: Hermitian2,
    g: Polynomial,
}

impl NonlinearCoin {
    pub fn new(gamma: Hermitian2, g: Polynomial) -> Self {
        Self { gamma, g }
    }

    pub fn from_pauli(gamma: PauliVector, g: Polynomial) -> Self {
        Self::new(Hermitian2::from_pauli(&gamma), g)
    }

    pub fn gamma(&self) -> &Hermitian2 {
        &self.gamma
    }

    pub fn g(&self) -> &Polynomial {
        &self.g
    }

    /// `⟨u, γu⟩_{C²}`.
    pub fn density(&self, u: &Spinor) -> f64 {
        self.gamma.quadratic_form(u)
    }

    pub fn phase_angle(&self, u: &Spinor, t: f64) -> f64 {
        t * self.g.eval(self.density(u))
    }

    /// Exact solution at time `t` of `i ∂_t v = g(⟨v, γv⟩)γv` started from `u`.
    pub fn apply(&self, u: &Spinor, t: f64) -> Spinor {
        hermitian_phase(&self.gamma, self.phase_angle(u, t)).apply(u)
    }

    /// `G(v) = g(⟨v, γv⟩)γv`.
    pub fn vector_field(&self, v: &Spinor) -> Spinor {
        let gv = self.gamma.matrix().apply(v);
        let s = self.g.eval(self.density(v));
        [gv[0] * s, gv[1] * s]
    }

    /// Fréchet derivative `G'(v)w = 2g'(⟨v,γv⟩) Re⟨w,γv⟩ γv + g(⟨v,γv⟩) γw`.
    pub fn frechet(&self, v: &Spinor, w: &Spinor) -> Spinor {
        let m = self.gamma.matrix();
        let gv = m.apply(v);
        let gw = m.apply(w);
        let rho = self.density(v);
        let re = crate::spectral::spinor_inner(w, &gv).re;
        let a = 2.0 * self.g.derivative(rho) * re;
        let b = self.g.eval(rho);
        [gv[0] * a + gw[0] * b, gv[1] * a + gw[1] * b]
    }

    /// Worst relative disagreement between [`frechet`](Self::frechet) and a
    /// central difference of [`vector_field`](Self::vector_field) with step `h`.
    pub fn frechet_defect(&self, v: &Spinor, w: &Spinor, h: f64) -> f64 {
        let plus = self.vector_field(&[v[0] + w[0] * h, v[1] + w[1] * h]);
        let minus = self.vector_field(&[v[0] - w[0] * h, v[1] - w[1] * h]);
        let fd: Vec<Complex64> = (0..2).map(|i| (plus[i] - minus[i]) / (2.0 * h)).collect();
        let exact = self.frechet(v, w);
        let scale = 1.0 + exact[0].norm().max(exact[1].norm());
        (0..2).map(|i| (fd[i] - exact[i]).norm()).fold(0.0, f64::max) / scale
    }
}

/// `t·g(⟨u, γu⟩)`, the angle of the nonlinear phase at one site.
pub fn nonlinear_phase_angle(coin: &NonlinearCoin, u: &Spinor, t: f64) -> f64 {
    coin.phase_angle(u, t)
}
