//! Weak solutions `v(t, s)` of Burgers' equation `v_t + (v²/2)_s = 0` on
//! space-time grids: entropy pairs, weak and entropy-balance residuals, the
//! space-only commutator bound, Oleinik's one-sided estimate and a
//! shock-free / entropy-solution classification.

mod bump;
mod cet;
mod classify;
mod field;
mod io;
mod pairs;
mod residuals;

pub use bump::SpaceTimeBump;
pub use cet::{cet_spacetime, CetSpacetimeReport};
pub use classify::{
    classify_burgers, kruzhkov_levels, BurgersReport, BurgersVerdict, WindowResiduals,
};
pub use field::{BurgersGenerator, Provenance, SpaceTimeField};
pub use io::{
    read_spacetime, read_spacetime_from, write_spacetime, write_spacetime_to, SPACETIME_TAG,
};
pub use pairs::{EntropyPair, Flux};
pub use residuals::{
    balance_residual, oleinik_check, shock_weighted_length, weak_residual, OleinikReport,
};
