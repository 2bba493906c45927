//! Discrete-time quantum walks on `δZ`, linear and nonlinear, together with a
//! split-step solver for the nonlinear Dirac equation they approximate and a
//! laboratory that measures the `O(δ)` convergence of one to the other.
//!
//! The crate is organised bottom-up:
//!
//! - [`spectral`]: lattice fields, the band-limited space they interpolate
//!   into, transforms, projections and Sobolev norms;
//! - [`coin`]: Pauli algebra and the linear and nonlinear coins;
//! - [`walk`]: the recurrence `U(m+1) = S C N U(m)`;
//! - [`dirac`]: exact split flows of the Dirac equation and a certified
//!   Strang reference solver;
//! - [`lab`]: experiment configuration, convergence runs, rate fits,
//!   invariant checks and report files.

pub mod coin;
pub mod dirac;
pub mod error;
pub mod lab;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
