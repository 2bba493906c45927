use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::spectral::{spinor_inner, Spinor};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

/// A 2×2 complex matrix `[[a, b], [c, d]]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Matrix2 {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl Matrix2 {
    pub const fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Self {
        Self { a, b, c, d }
    }

    pub const fn identity() -> Self {
        Self::new(ONE, ZERO, ZERO, ONE)
    }

    pub const fn zero() -> Self {
        Self::new(ZERO, ZERO, ZERO, ZERO)
    }

    pub fn from_real(a: f64, b: f64, c: f64, d: f64) -> Self {
        Self::new(a.into(), b.into(), c.into(), d.into())
    }

    pub fn scale(&self, z: Complex64) -> Self {
        Self::new(self.a * z, self.b * z, self.c * z, self.d * z)
    }

    pub fn adjoint(&self) -> Self {
        Self::new(self.a.conj(), self.c.conj(), self.b.conj(), self.d.conj())
    }

    pub fn apply(&self, v: &Spinor) -> Spinor {
        [self.a * v[0] + self.b * v[1], self.c * v[0] + self.d * v[1]]
    }

    pub fn trace(&self) -> Complex64 {
        self.a + self.d
    }

    /// Induced ∞-norm (maximum absolute row sum).
    pub fn norm_inf(&self) -> f64 {
        (self.a.norm() + self.b.norm()).max(self.c.norm() + self.d.norm())
    }

    /// `‖M*M − I‖_∞`.
    pub fn unitarity_defect(&self) -> f64 {
        (self.adjoint() * *self - Self::identity()).norm_inf()
    }

    pub fn hermiticity_defect(&self) -> f64 {
        (*self - self.adjoint()).norm_inf()
    }

    pub fn commutator(&self, other: &Matrix2) -> Matrix2 {
        *self * *other - *other * *self
    }

    /// `⟨u, M u⟩_{C²}`.
    pub fn expectation(&self, u: &Spinor) -> Complex64 {
        spinor_inner(u, &self.apply(u))
    }
}

impl Mul for Matrix2 {
    type Output = Matrix2;

    fn mul(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl Add for Matrix2 {
    type Output = Matrix2;

    fn add(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

impl Sub for Matrix2 {
    type Output = Matrix2;

    fn sub(self, o: Matrix2) -> Matrix2 {
        Matrix2::new(self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d)
    }
}

/// `σ_α` for `α ∈ {0, 1, 2, 3}`.
pub fn pauli(alpha: usize) -> Matrix2 {
    match alpha {
        0 => Matrix2::identity(),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -I, I, ZERO),
        3 => Matrix2::new(ONE, ZERO, ZERO, -ONE),
        _ => panic!("Pauli index {alpha} out of range"),
    }
}

/// Real coefficients of `s·σ = Σ s_α σ_α`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct PauliVector(pub [f64; 4]);

impl PauliVector {
    pub const fn new(s0: f64, s1: f64, s2: f64, s3: f64) -> Self {
        Self([s0, s1, s2, s3])
    }

    pub fn matrix(&self) -> Matrix2 {
        let [s0, s1, s2, s3] = self.0;
        Matrix2::new(
            (s0 + s3).into(),
            Complex64::new(s1, -s2),
            Complex64::new(s1, s2),
            (s0 - s3).into(),
        )
    }

    /// Norm of the traceless part `(s₁, s₂, s₃)`.
    /// The coin vector whose exponential at `t = 1` is the Hadamard matrix.
    pub fn hadamard() -> Self {
        let q = std::f64::consts::PI / (2.0 * std::f64::consts::SQRT_2);
        Self::new(-std::f64::consts::FRAC_PI_2, q, 0.0, q)
    }

    pub fn vector_norm(&self) -> f64 {
        let [_, s1, s2, s3] = self.0;
        (s1 * s1 + s2 * s2 + s3 * s3).sqrt()
    }

    pub fn scaled(&self, t: f64) -> Self {
        Self(self.0.map(|x| x * t))
    }
}

/// `e^{-it(s·σ)}` in closed form.
///
/// With `v = (s₁, s₂, s₃)` this is
/// `e^{-its₀}[cos(t|v|) σ₀ − i sin(t|v|) (v·σ)/|v|]`; when `t|v|` is below
/// `1e-8` the quotient is replaced by its two-term Taylor expansion.
pub fn pauli_exp(s: &PauliVector, t: f64) -> Matrix2 {
    let [s0, s1, s2, s3] = s.0;
    let r = s.vector_norm();
    let tr = t * r;
    let (cos, sinc_t) = if tr.abs() < 1e-8 {
        (1.0 - tr * tr / 2.0, t)
    } else {
        (tr.cos(), tr.sin() / r)
    };
    // cos·I − i·(sin(tr)/r)·(v·σ)
    let a = Complex64::new(cos, -sinc_t * s3);
    let d = Complex64::new(cos, sinc_t * s3);
    let b = Complex64::new(-sinc_t * s2, -sinc_t * s1);
    let c = Complex64::new(sinc_t * s2, -sinc_t * s1);
    Matrix2::new(a, b, c, d).scale(Complex64::from_polar(1.0, -t * s0))
}

/// A Hermitian 2×2 matrix together with its spectral decomposition
/// `γ = λ₊P₊ + λ₋P₋`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hermitian2 {
    matrix: Matrix2,
    eigenvalues: [f64; 2],
    projectors: [Matrix2; 2],
}

impl Hermitian2 {
    pub const TOLERANCE: f64 = 1e-14;

    pub fn new(matrix: Matrix2) -> Result<Self> {
        let defect = matrix.hermiticity_defect();
        if defect > Self::TOLERANCE * (1.0 + matrix.norm_inf()) {
            return Err(Error::NotHermitian(defect));
        }
        Ok(Self::from_pauli(&Self::pauli_coefficients_of(&matrix)))
    }

    pub fn from_pauli(s: &PauliVector) -> Self {
        let [c0, c1, c2, c3] = s.0;
        let r = s.vector_norm();
        let (eigenvalues, projectors) = if r < 1e-15 {
            ([c0, c0], [Matrix2::identity(), Matrix2::zero()])
        } else {
            let n = PauliVector::new(0.0, c1 / r, c2 / r, c3 / r).matrix();
            let half = Complex64::new(0.5, 0.0);
            (
                [c0 + r, c0 - r],
                [
                    (Matrix2::identity() + n).scale(half),
                    (Matrix2::identity() - n).scale(half),
                ],
            )
        };
        Self { matrix: s.matrix(), eigenvalues, projectors }
    }

    fn pauli_coefficients_of(m: &Matrix2) -> PauliVector {
        PauliVector::new(
            0.5 * (m.a.re + m.d.re),
            0.5 * (m.b.re + m.c.re),
            0.5 * (m.c.im - m.b.im),
            0.5 * (m.a.re - m.d.re),
        )
    }

    pub fn matrix(&self) -> &Matrix2 {
        &self.matrix
    }

    pub fn eigenvalues(&self) -> [f64; 2] {
        self.eigenvalues
    }

    pub fn pauli_coefficients(&self) -> PauliVector {
        Self::pauli_coefficients_of(&self.matrix)
    }

    /// `⟨u, γu⟩_{C²}`, real because `γ` is Hermitian.
    pub fn quadratic_form(&self, u: &Spinor) -> f64 {
        let z = self.matrix.expectation(u);
        debug_assert!(z.im.abs() <= 1e-13 * (1.0 + z.re.abs()));
        z.re
    }
}

/// `e^{-iθγ}` from the spectral decomposition of `γ`.
pub fn hermitian_phase(gamma: &Hermitian2, theta: f64) -> Matrix2 {
    let [lp, lm] = gamma.eigenvalues;
    let [pp, pm] = gamma.projectors;
    pp.scale(Complex64::from_polar(1.0, -theta * lp)) + pm.scale(Complex64::from_polar(1.0, -theta * lm))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn close(a: &Matrix2, b: &Matrix2, tol: f64) -> bool {
        (*a - *b).norm_inf() <= tol
    }

    #[test]
    fn pauli_matrices_match_their_definition() {
        assert_eq!(PauliVector::new(0.0, 0.0, 1.0, 0.0).matrix(), pauli(2));
        for a in 1..4 {
            assert!(close(&(pauli(a) * pauli(a)), &Matrix2::identity(), 0.0));
        }
        // σ₁σ₂ = iσ₃
        assert!(close(&(pauli(1) * pauli(2)), &pauli(3).scale(I), 0.0));
    }

    #[test]
    fn zero_vector_exponentiates_to_identity() {
        assert_eq!(pauli_exp(&PauliVector::default(), 0.7), Matrix2::identity());
    }

    #[test]
    fn feynman_checkerboard_coin() {
        let delta = 0.3;
        let m = pauli_exp(&PauliVector::new(0.0, -1.0, 0.0, 0.0), delta);
        let expected = Matrix2::new(
            delta.cos().into(),
            Complex64::new(0.0, delta.sin()),
            Complex64::new(0.0, delta.sin()),
            delta.cos().into(),
        );
        assert!(close(&m, &expected, 1e-15));
    }

    #[test]
    fn hadamard_vector() {
        let m = pauli_exp(&PauliVector::hadamard(), 1.0);
        let h = Matrix2::from_real(FRAC_1_SQRT_2, FRAC_1_SQRT_2, FRAC_1_SQRT_2, -FRAC_1_SQRT_2);
        assert!(close(&m, &h, 1e-15));
    }

    #[test]
    fn small_vector_branch_is_continuous() {
        let s_small = PauliVector::new(0.2, 3e-9, -1e-9, 2e-9);
        let s_above = PauliVector::new(0.2, 3e-8, -1e-8, 2e-8);
        for s in [s_small, s_above] {
            let m = pauli_exp(&s, 0.9);
            assert!(m.unitarity_defect() < 1e-15);
            // first order: e^{-its0}(I - it v·σ)
            let lin = (Matrix2::identity() - PauliVector::new(0.0, s.0[1], s.0[2], s.0[3]).matrix().scale(Complex64::new(0.0, 0.9)))
                .scale(Complex64::from_polar(1.0, -0.9 * 0.2));
            assert!(close(&m, &lin, 1e-15));
        }
    }

    #[test]
    fn thirring_and_gross_neveu_phases() {
        let theta = 0.4;
        let g0 = Hermitian2::from_pauli(&PauliVector::new(1.0, 0.0, 0.0, 0.0));
        assert!(close(
            &hermitian_phase(&g0, theta),
            &Matrix2::identity().scale(Complex64::from_polar(1.0, -theta)),
            1e-15
        ));
        let g3 = Hermitian2::new(pauli(3)).unwrap();
        let expected = Matrix2::new(
            Complex64::from_polar(1.0, -theta),
            ZERO,
            ZERO,
            Complex64::from_polar(1.0, theta),
        );
        assert!(close(&hermitian_phase(&g3, theta), &expected, 1e-15));
        assert_eq!(hermitian_phase(&g3, 0.0), Matrix2::identity());
    }

    #[test]
    fn hermitian_phase_agrees_with_pauli_exp() {
        let s = PauliVector::new(0.3, -1.2, 0.5, 0.9);
        let gamma = Hermitian2::from_pauli(&s);
        assert!(close(&hermitian_phase(&gamma, 0.77), &pauli_exp(&s, 0.77), 1e-14));
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let m = Matrix2::new(ONE, I, I, ONE);
        assert!(matches!(Hermitian2::new(m), Err(Error::NotHermitian(_))));
        let gamma = Hermitian2::new(pauli(2)).unwrap();
        assert_eq!(gamma.pauli_coefficients(), PauliVector::new(0.0, 0.0, 1.0, 0.0));
    }
}
