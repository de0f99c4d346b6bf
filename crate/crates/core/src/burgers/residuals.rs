use super::{BurgersGenerator, EntropyPair, Flux, SpaceTimeBump, SpaceTimeField};
use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Rejects test functions whose support comes within two cells of the grid boundary.
pub(crate) fn check_support(v: &SpaceTimeField, zeta: &SpaceTimeBump) -> Result<()> {
    let ((tl, sl), (th, sh)) = zeta.bbox();
    let ok = tl - v.t0 >= 2.0 * v.dt * (1.0 - 1e-9)
        && v.t_max() - th >= 2.0 * v.dt * (1.0 - 1e-9)
        && sl - v.s0 >= 2.0 * v.ds * (1.0 - 1e-9)
        && v.s_max() - sh >= 2.0 * v.ds * (1.0 - 1e-9);
    if ok {
        Ok(())
    } else {
        Err(Error::SupportOverflow(format!(
            "test support [{tl}, {th}] x [{sl}, {sh}] too close to [{}, {}] x [{}, {}]",
            v.t0,
            v.t_max(),
            v.s0,
            v.s_max()
        )))
    }
}

/// Midpoint rule over the cells covering the support: each cell contributes
/// `cell(corner average of node data, t_c, s_c)`; rows summed in order.
pub(crate) fn cell_sum(
    v: &SpaceTimeField,
    zeta: &SpaceTimeBump,
    node: impl Fn(f64) -> (f64, f64),
    cell: impl Fn((f64, f64), f64, f64) -> f64,
) -> f64 {
    let ((tl, sl), (th, sh)) = zeta.bbox();
    let lo =
        |x: f64, x0: f64, d: f64, n: usize| (((x - x0) / d).floor().max(0.0) as usize).min(n - 1);
    let hi =
        |x: f64, x0: f64, d: f64, n: usize| (((x - x0) / d).ceil().max(0.0) as usize).min(n - 1);
    let (i0, i1) = (lo(tl, v.t0, v.dt, v.nt), hi(th, v.t0, v.dt, v.nt));
    let (j0, j1) = (lo(sl, v.s0, v.ds, v.ns), hi(sh, v.s0, v.ds, v.ns));
    let mut total = 0.0;
    for i in i0..i1 {
        let tc = v.t(i) + 0.5 * v.dt;
        let mut row = 0.0;
        let mut left = (node(v.at(i, j0)), node(v.at(i + 1, j0)));
        for j in j0..j1 {
            let right = (node(v.at(i, j + 1)), node(v.at(i + 1, j + 1)));
            let avg = (
                0.25 * (left.0 .0 + left.1 .0 + right.0 .0 + right.1 .0),
                0.25 * (left.0 .1 + left.1 .1 + right.0 .1 + right.1 .1),
            );
            row += cell(avg, tc, v.s(j) + 0.5 * v.ds);
            left = right;
        }
        total += row;
    }
    total * v.dt * v.ds
}

/// `-∫∫ (a(v) ζ_t + b(v) ζ_s)`.
fn pairing(
    v: &SpaceTimeField,
    zeta: &SpaceTimeBump,
    node: impl Fn(f64) -> (f64, f64),
) -> Result<f64> {
    check_support(v, zeta)?;
    Ok(-cell_sum(v, zeta, node, |(a, b), t, s| {
        let (zt, zs) = zeta.gradient(t, s);
        a * zt + b * zs
    }))
}

/// `-∫∫ (v ζ_t + f(v) ζ_s)`, the distributional residual of `v_t + f(v)_s`.
pub fn weak_residual(v: &SpaceTimeField, zeta: &SpaceTimeBump, flux: Flux) -> Result<f64> {
    pairing(v, zeta, |x| (x, flux.eval(x)))
}

/// `-∫∫ (η(v) ζ_t + q(v) ζ_s)`, the pairing of `η(v)_t + q(v)_s` with `ζ`.
pub fn balance_residual(
    v: &SpaceTimeField,
    pair: &EntropyPair,
    zeta: &SpaceTimeBump,
) -> Result<f64> {
    pairing(v, zeta, |x| (pair.eta(x), pair.q(x)))
}

/// `∫ ζ(t, s* + σ t) dt` along the jump line of a shock generator.
pub fn shock_weighted_length(generator: &BurgersGenerator, zeta: &SpaceTimeBump) -> Option<f64> {
    let (s_star, speed) = generator.shock_line()?;
    let ((tl, _), (th, _)) = zeta.bbox();
    let n = 20_000;
    let dt = (th - tl) / n as f64;
    Some(
        (0..n)
            .map(|k| {
                let t = tl + (k as f64 + 0.5) * dt;
                zeta.value(t, s_star + speed * t)
            })
            .sum::<f64>()
            * dt,
    )
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OleinikReport {
    pub t: f64,
    /// `max_{s' > s} (v(t, s') - v(t, s)) / (s' - s)`.
    pub quotient: f64,
    /// `1/t`.
    pub bound: f64,
}

/// One-sided difference quotient on time level `i` over all node pairs.
pub fn oleinik_check(v: &SpaceTimeField, i: usize) -> Result<OleinikReport> {
    if i >= v.nt {
        return Err(Error::InvalidParameter(format!(
            "time level {i} outside 0..{}",
            v.nt
        )));
    }
    let t = v.t(i);
    if t <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "Oleinik slice needs t > 0, got {t}"
        )));
    }
    let row = v.slice(i);
    let mut best = f64::NEG_INFINITY;
    for a in 0..row.len() {
        for b in a + 1..row.len() {
            best = best.max((row[b] - row[a]) / ((b - a) as f64 * v.ds));
        }
    }
    Ok(OleinikReport {
        t,
        quotient: best,
        bound: 1.0 / t,
    })
}
