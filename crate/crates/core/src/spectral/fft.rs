use std::cell::RefCell;
use std::sync::Arc;

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

thread_local! {
    static PLANNER: RefCell<FftPlanner<f64>> = RefCell::new(FftPlanner::new());
}

fn plan(len: usize, inverse: bool) -> Arc<dyn Fft<f64>> {
    PLANNER.with(|p| {
        let mut p = p.borrow_mut();
        if inverse {
            p.plan_fft_inverse(len)
        } else {
            p.plan_fft_forward(len)
        }
    })
}

/// Unnormalized `Σ_n e^{-2πink/N} x_n`, in place.
pub(crate) fn forward(buf: &mut [Complex64]) {
    plan(buf.len(), false).process(buf);
}

/// Unnormalized `Σ_k e^{+2πink/N} x_k`, in place.
pub(crate) fn inverse(buf: &mut [Complex64]) {
    plan(buf.len(), true).process(buf);
}
