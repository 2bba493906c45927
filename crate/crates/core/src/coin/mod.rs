//! Pauli algebra, closed-form `SU(2)`-type exponentials, linear coin profiles
//! and nonlinear (state-dependent) coins.

mod matrix;
mod nonlinear;
mod profile;

pub use matrix::{hermitian_phase, pauli, pauli_exp, Hermitian2, Matrix2, PauliVector};
pub use nonlinear::{nonlinear_phase_angle, NonlinearCoin, Polynomial};
pub use profile::{eval_coin_field, CoinField, CoinProfile, ProfileTerm, Shape};
