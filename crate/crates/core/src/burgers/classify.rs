use super::{
    balance_residual, cet_spacetime, oleinik_check, weak_residual, CetSpacetimeReport, EntropyPair,
    Flux, OleinikReport, SpaceTimeBump, SpaceTimeField,
};
use crate::config::Tolerances;
use crate::error::Result;
use serde::{Deserialize, Serialize};

/// Number of Kružkov levels sampled across the field's range.
pub const KRUZHKOV_LEVELS: usize = 9;

/// `KRUZHKOV_LEVELS` equispaced `k` spanning `[min v, max v]`.
pub fn kruzhkov_levels(v: &SpaceTimeField) -> Vec<f64> {
    let (lo, hi) = v.range();
    let n = KRUZHKOV_LEVELS - 1;
    (0..=n)
        .map(|i| {
            if i == n {
                hi
            } else {
                lo + (hi - lo) * i as f64 / n as f64
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindowResiduals {
    pub window: SpaceTimeBump,
    pub weak: f64,
    pub energy: f64,
    /// `(k, residual)` pairs.
    pub kruzhkov: Vec<(f64, f64)>,
    pub cet: Vec<CetSpacetimeReport>,
    /// Ratio of the last to the first commutator tail across the ladder.
    pub cet_decay: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BurgersVerdict {
    pub entropy_solution: bool,
    pub shock_free: bool,
    /// Commutator sums decay across the ladder on every window.
    pub cet_decays: bool,
    /// `max |v(t, s_{j+1}) - v(t, s_j)| / ds` over the windows.
    pub lipschitz_estimate: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BurgersReport {
    pub h: (f64, f64),
    pub windows: Vec<WindowResiduals>,
    /// Slice with the largest `t · quotient` inside the windows.
    pub oleinik: OleinikReport,
    pub verdict: BurgersVerdict,
}

/// Largest ratio of the last to the first commutator tail read as decay.
const DECAY_RATIO: f64 = 1.0 / 3.0;

/// Weak, energy and Kružkov residuals per window, the commutator ladder, the
/// Oleinik slice and the resulting verdicts. `eps_ladder` is in units of `ds`.
pub fn classify_burgers(
    v: &SpaceTimeField,
    windows: &[SpaceTimeBump],
    eps_ladder: &[f64],
    tol: &Tolerances,
) -> Result<BurgersReport> {
    let levels = kruzhkov_levels(v);
    let mut out = Vec::with_capacity(windows.len());
    for w in windows {
        let weak = weak_residual(v, w, Flux::Burgers)?;
        let energy = balance_residual(v, &EntropyPair::Energy, w)?;
        let kruzhkov = levels
            .iter()
            .map(|&k| Ok((k, balance_residual(v, &EntropyPair::Kruzhkov { k }, w)?)))
            .collect::<Result<Vec<_>>>()?;
        let cet = eps_ladder
            .iter()
            .map(|&m| cet_spacetime(v, m * v.ds, w))
            .collect::<Result<Vec<_>>>()?;
        let cet_decay = match (cet.first(), cet.last()) {
            (Some(a), Some(b)) if a.tail > 0.0 => b.tail / a.tail,
            _ => 0.0,
        };
        out.push(WindowResiduals {
            window: *w,
            weak,
            energy,
            kruzhkov,
            cet,
            cet_decay,
        });
    }
    let mut lipschitz: f64 = 0.0;
    let mut oleinik: Option<OleinikReport> = None;
    for w in windows {
        let ((tl, sl), (th, sh)) = w.bbox();
        let (i0, i1) = (v.nearest_t(tl), v.nearest_t(th));
        let j0 = (((sl - v.s0) / v.ds).floor().max(0.0) as usize).min(v.ns - 1);
        let j1 = (((sh - v.s0) / v.ds).ceil().max(0.0) as usize).min(v.ns - 1);
        for i in i0..=i1 {
            let row = v.slice(i);
            for j in j0..j1 {
                lipschitz = lipschitz.max((row[j + 1] - row[j]).abs() / v.ds);
            }
            let o = oleinik_check(v, i)?;
            if oleinik
                .as_ref()
                .is_none_or(|b| o.quotient * o.t > b.quotient * b.t)
            {
                oleinik = Some(o);
            }
        }
    }
    let oleinik = match oleinik {
        Some(o) => o,
        None => oleinik_check(v, v.nt - 1)?,
    };
    let r_tol = tol.burgers_residual_tol;
    let shock_free = out
        .iter()
        .all(|w| w.weak.abs() <= r_tol && w.energy.abs() <= r_tol);
    let entropy_solution = out
        .iter()
        .all(|w| w.weak.abs() <= r_tol && w.kruzhkov.iter().all(|&(_, r)| r <= r_tol));
    let cet_decays = out.iter().all(|w| w.cet_decay <= DECAY_RATIO);
    Ok(BurgersReport {
        h: (v.dt, v.ds),
        windows: out,
        oleinik,
        verdict: BurgersVerdict {
            entropy_solution,
            shock_free,
            cet_decays,
            lipschitz_estimate: lipschitz,
        },
    })
}
