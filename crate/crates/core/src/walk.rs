//! The nonlinear quantum walk `U(m+1) = S_δ C_δ N_δ U(m)` on a periodic lattice.

use crate::coin::{eval_coin_field, CoinField, CoinProfile, NonlinearCoin};
use crate::error::{Error, Result};
use crate::spectral::{GridSpec, LatticeField};

/// Coin profile and nonlinear coins bound to one lattice, with the linear
/// coin matrices `e^{-iδ s(x)·σ}` precomputed for that lattice.
#[derive(Clone, Debug)]
pub struct WalkModel {
    grid: GridSpec,
    coin: CoinProfile,
    nonlinear: Vec<NonlinearCoin>,
    coin_field: CoinField,
}

impl WalkModel {
    pub fn new(grid: GridSpec, coin: CoinProfile, nonlinear: Vec<NonlinearCoin>) -> Self {
        let coin_field = eval_coin_field(&coin, grid, grid.spacing());
        Self { grid, coin, nonlinear, coin_field }
    }

    pub fn linear(grid: GridSpec, coin: CoinProfile) -> Self {
        Self::new(grid, coin, Vec::new())
    }

    pub fn grid(&self) -> &GridSpec {
        &self.grid
    }

    pub fn coin(&self) -> &CoinProfile {
        &self.coin
    }

    pub fn nonlinear(&self) -> &[NonlinearCoin] {
        &self.nonlinear
    }

    pub fn coin_field(&self) -> &CoinField {
        &self.coin_field
    }

    pub fn is_linear(&self) -> bool {
        self.nonlinear.iter().all(|c| c.g().is_zero())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WalkState {
    pub step: usize,
    pub field: LatticeField,
}

impl WalkState {
    pub fn initial(field: LatticeField) -> Self {
        Self { step: 0, field }
    }

    /// One step of the recurrence, in place.
    pub fn advance(&mut self, model: &WalkModel) -> Result<()> {
        ensure_grid(model.grid(), self.field.grid())?;
        nonlinear_in_place(&mut self.field, model.nonlinear(), model.grid().spacing());
        coin_in_place(&mut self.field, model.coin_field())?;
        shift_in_place(&mut self.field);
        self.step += 1;
        Ok(())
    }
}

fn ensure_grid(expected: &GridSpec, found: &GridSpec) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::GridMismatch {
            expected: expected.points(),
            expected_spacing: expected.spacing(),
            found: found.points(),
            found_spacing: found.spacing(),
        })
    }
}

pub(crate) fn shift_in_place(u: &mut LatticeField) {
    let c = u.components_mut();
    // component 1 takes its value from x − δ, component 2 from x + δ
    c[0].rotate_right(1);
    c[1].rotate_left(1);
}

pub(crate) fn coin_in_place(u: &mut LatticeField, coin: &CoinField) -> Result<()> {
    ensure_grid(coin.grid(), u.grid())?;
    let [up, down] = u.components_mut();
    for ((a, b), m) in up.iter_mut().zip(down.iter_mut()).zip(coin.matrices()) {
        let v = m.apply(&[*a, *b]);
        *a = v[0];
        *b = v[1];
    }
    Ok(())
}

/// Applies every nonlinear coin for time `t`, in list order.
pub(crate) fn nonlinear_in_place(u: &mut LatticeField, coins: &[NonlinearCoin], t: f64) {
    if coins.is_empty() {
        return;
    }
    let [up, down] = u.components_mut();
    for (a, b) in up.iter_mut().zip(down.iter_mut()) {
        let mut v = [*a, *b];
        for coin in coins {
            v = coin.apply(&v, t);
        }
        *a = v[0];
        *b = v[1];
    }
}

/// `S_δ`: component 1 moves one site right, component 2 one site left.
pub fn apply_shift(u: &LatticeField) -> LatticeField {
    let mut out = u.clone();
    shift_in_place(&mut out);
    out
}

/// `C_δ`: multiplies each site by its precomputed coin matrix.
pub fn apply_coin(u: &LatticeField, coin: &CoinField) -> Result<LatticeField> {
    let mut out = u.clone();
    coin_in_place(&mut out, coin)?;
    Ok(out)
}

/// `N_δ`: the nonlinear coins at `t = δ`, applied in list order.
pub fn apply_nonlinear(u: &LatticeField, coins: &[NonlinearCoin]) -> LatticeField {
    let mut out = u.clone();
    nonlinear_in_place(&mut out, coins, u.grid().spacing());
    out
}

pub fn walk_step(state: &WalkState, model: &WalkModel) -> Result<WalkState> {
    let mut next = state.clone();
    next.advance(model)?;
    Ok(next)
}

pub fn evolve(u0: LatticeField, model: &WalkModel, steps: usize) -> Result<WalkState> {
    evolve_with(u0, model, steps, |_| {})
}

/// Like [`evolve`], handing the observer the initial state and the state
/// after every step.
pub fn evolve_with(
    u0: LatticeField,
    model: &WalkModel,
    steps: usize,
    mut observer: impl FnMut(&WalkState),
) -> Result<WalkState> {
    let mut state = WalkState::initial(u0);
    observer(&state);
    for _ in 0..steps {
        state.advance(model)?;
        observer(&state);
    }
    Ok(state)
}
