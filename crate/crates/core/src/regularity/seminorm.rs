//! Windowed Gagliardo double sums.

use crate::error::{Error, Result};
use crate::fields::{GridField2, GridScalar, GridSpec, Window};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Node data that can be differenced.
pub trait NodeData: Sync {
    fn spec(&self) -> &GridSpec;
    fn diff_norm(&self, a: usize, b: usize) -> f64;
}

impl NodeData for GridField2 {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }
    fn diff_norm(&self, a: usize, b: usize) -> f64 {
        (self.values[a] - self.values[b]).norm()
    }
}

impl NodeData for GridScalar {
    fn spec(&self) -> &GridSpec {
        &self.spec
    }
    fn diff_norm(&self, a: usize, b: usize) -> f64 {
        (self.values[a] - self.values[b]).abs()
    }
}

/// Stratified random subsampling: `per_node` partners per source node.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Subsample {
    pub per_node: usize,
    pub seed: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormOptions {
    /// Pairs with `|x - y| < near_diagonal_cut · h` are skipped.
    pub near_diagonal_cut: f64,
    pub subsample: Option<Subsample>,
}

impl Default for SeminormOptions {
    fn default() -> Self {
        SeminormOptions {
            near_diagonal_cut: 1.0,
            subsample: None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SeminormReport {
    pub s: f64,
    pub p: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<Window>,
    pub h: f64,
    pub value: f64,
    pub pairs_used: u64,
    pub excluded_pairs: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stderr: Option<f64>,
    pub near_diagonal_cut: f64,
    pub node_count: usize,
}

#[inline]
fn pow_abs(d: f64, p: f64) -> f64 {
    if p == 2.0 {
        d * d
    } else if p == 3.0 {
        d * d * d
    } else if p == 1.0 {
        d
    } else {
        d.powf(p)
    }
}

fn check_exponents(s: f64, p: f64) -> Result<()> {
    if !(s > 0.0 && s < 1.0) {
        return Err(Error::InvalidParameter(format!(
            "order s must lie in (0, 1), got {s}"
        )));
    }
    if !(p >= 1.0) {
        return Err(Error::InvalidParameter(format!(
            "exponent p must be >= 1, got {p}"
        )));
    }
    Ok(())
}

/// Per-source partial sums; full or stratified-subsampled.
/// Returns `(sum, variance estimate, used, excluded)`.
fn accumulate<F>(n: usize, opts: &SeminormOptions, term: F) -> (f64, Option<f64>, u64, u64)
where
    F: Fn(usize, usize) -> Option<f64> + Sync,
{
    match opts.subsample {
        None => {
            let parts: Vec<(f64, u64, u64)> = (0..n)
                .into_par_iter()
                .map(|a| {
                    let (mut s, mut used, mut skipped) = (0.0, 0u64, 0u64);
                    for b in 0..n {
                        if a == b {
                            continue;
                        }
                        match term(a, b) {
                            Some(v) => {
                                s += v;
                                used += 1;
                            }
                            None => skipped += 1,
                        }
                    }
                    (s, used, skipped)
                })
                .collect();
            let mut total = (0.0, 0, 0);
            for (s, u, e) in parts {
                total.0 += s;
                total.1 += u;
                total.2 += e;
            }
            (total.0, None, total.1, total.2)
        }
        Some(sub) => {
            let m = sub.per_node.max(2);
            let parts: Vec<(f64, f64, u64, u64)> = (0..n)
                .into_par_iter()
                .map(|a| {
                    let mut rng = ChaCha8Rng::seed_from_u64(
                        sub.seed ^ (a as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
                    );
                    let (mut s, mut s2, mut used, mut skipped) = (0.0, 0.0, 0u64, 0u64);
                    for _ in 0..m {
                        let mut b = rng.gen_range(0..n - 1);
                        if b >= a {
                            b += 1;
                        }
                        let v = match term(a, b) {
                            Some(v) => {
                                used += 1;
                                v
                            }
                            None => {
                                skipped += 1;
                                0.0
                            }
                        };
                        s += v;
                        s2 += v * v;
                    }
                    let mean = s / m as f64;
                    let var = (s2 / m as f64 - mean * mean).max(0.0) * m as f64 / (m as f64 - 1.0);
                    let scale = (n - 1) as f64;
                    (mean * scale, var * scale * scale / m as f64, used, skipped)
                })
                .collect();
            let mut total = (0.0, 0.0, 0, 0);
            for (s, v, u, e) in parts {
                total.0 += s;
                total.1 += v;
                total.2 += u;
                total.3 += e;
            }
            (total.0, Some(total.1), total.2, total.3)
        }
    }
}

/// `h⁴ Σ_{x≠y} |u(x) - u(y)|^p / |x - y|^{2+sp}` over window nodes.
pub fn gagliardo_seminorm<F: NodeData>(
    field: &F,
    s: f64,
    p: f64,
    window: &Window,
    opts: &SeminormOptions,
) -> Result<SeminormReport> {
    check_exponents(s, p)?;
    let spec = *field.spec();
    let (wx, wy) = window.node_extent(&spec);
    if wx < 4 || wy < 4 {
        return Err(Error::WindowTooSmall(format!(
            "{wx} x {wy} nodes, need at least 4 x 4"
        )));
    }
    let nodes = window.node_indices(&spec);
    let ij: Vec<(isize, isize)> = nodes
        .iter()
        .map(|&k| {
            let (i, j) = spec.ij(k);
            (i as isize, j as isize)
        })
        .collect();
    // offset weight table |m|^{-(2+sp)} in units of h
    let (ax, ay) = (wx as isize, wy as isize);
    let e = 0.5 * (2.0 + s * p);
    let cut2 = opts.near_diagonal_cut * opts.near_diagonal_cut;
    let mut table = vec![0.0; ((2 * ax + 1) * (2 * ay + 1)) as usize];
    for dj in -ay..=ay {
        for di in -ax..=ax {
            let r2 = (di * di + dj * dj) as f64;
            table[((dj + ay) * (2 * ax + 1) + di + ax) as usize] = if r2 == 0.0 || r2 < cut2 {
                -1.0
            } else {
                r2.powf(-e)
            };
        }
    }
    let term = |a: usize, b: usize| {
        let (di, dj) = (ij[b].0 - ij[a].0, ij[b].1 - ij[a].1);
        let w = table[((dj + ay) * (2 * ax + 1) + di + ax) as usize];
        (w >= 0.0).then(|| pow_abs(field.diff_norm(nodes[a], nodes[b]), p) * w)
    };
    let (sum, var, used, excluded) = accumulate(nodes.len(), opts, term);
    let h = spec.h;
    // h^4 Σ |Δ|^p / (h|m|)^{2+sp}
    let scale = h.powi(4) * h.powf(-(2.0 + s * p));
    Ok(SeminormReport {
        s,
        p,
        window: Some(*window),
        h,
        value: sum * scale,
        pairs_used: used,
        excluded_pairs: excluded,
        stderr: var.map(|v| v.sqrt() * scale),
        near_diagonal_cut: opts.near_diagonal_cut,
        node_count: nodes.len(),
    })
}

/// `ds² Σ_{s≠σ} |v(s) - v(σ)|^p / |s - σ|^{1+sp}` for a uniformly sampled line.
pub fn gagliardo_seminorm_1d(
    values: &[f64],
    ds: f64,
    s: f64,
    p: f64,
    opts: &SeminormOptions,
) -> Result<SeminormReport> {
    check_exponents(s, p)?;
    if values.len() < 4 {
        return Err(Error::WindowTooSmall(format!(
            "{} nodes, need at least 4",
            values.len()
        )));
    }
    let e = 1.0 + s * p;
    let n = values.len();
    let weights: Vec<f64> = (0..n)
        .map(|m| if m == 0 { 0.0 } else { (m as f64).powf(-e) })
        .collect();
    let cut = opts.near_diagonal_cut;
    let term = |a: usize, b: usize| {
        let m = a.abs_diff(b);
        ((m as f64) >= cut).then(|| pow_abs((values[a] - values[b]).abs(), p) * weights[m])
    };
    let (sum, var, used, excluded) = accumulate(n, opts, term);
    let scale = ds * ds * ds.powf(-e);
    Ok(SeminormReport {
        s,
        p,
        window: None,
        h: ds,
        value: sum * scale,
        pairs_used: used,
        excluded_pairs: excluded,
        stderr: var.map(|v| v.sqrt() * scale),
        near_diagonal_cut: cut,
        node_count: n,
    })
}
