use super::ordering::random_pairs;
use super::trace::trace_bidirectional;
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fields::{GridField2, Window};
use crate::geometry::Vec2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Vortex,
    Lipschitz,
    Inconsistent,
}

/// Statistics the verdict was derived from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Evidence {
    pub seeds: usize,
    pub lines: usize,
    /// True when the fitted lines are (nearly) parallel and no common point exists.
    pub degenerate: bool,
    /// Largest distance from the fitted point to a traced line.
    pub line_spread: Option<f64>,
    pub center_distance_to_window: Option<f64>,
    /// Mean straightness defect per unit length of the traced lines.
    pub mean_straightness: f64,
    pub lipschitz_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub verdict: Verdict,
    pub d: f64,
    pub h: f64,
    pub vortex_center: Option<Vec2>,
    pub orientation: Option<i32>,
    /// `max_x |u(x) - α (x-P)^⊥ / |x-P||` over the window.
    pub residual: Option<f64>,
    pub lipschitz_constant_estimate: f64,
    pub evidence: Evidence,
}

/// Seeds on a stride lattice of the window nodes (about `target` per side).
fn seeds(u: &GridField2, window: &Window, target: usize) -> Vec<usize> {
    let idx = window.node_indices(&u.spec);
    let (ex, ey) = window.node_extent(&u.spec);
    let stride = (ex.max(ey) / target).max(1);
    idx.into_iter()
        .filter(|&k| {
            let (i, j) = u.spec.ij(k);
            i % stride == 0 && j % stride == 0
        })
        .collect()
}

/// Least-squares point `argmin Σ dist(P, ℓ_i)²` over lines `(c_i, τ_i)`;
/// `None` when the normal matrix is near singular.
fn common_point(lines: &[(Vec2, Vec2)]) -> Option<Vec2> {
    let (mut a, mut b, mut c) = (0.0, 0.0, 0.0);
    let mut rhs = Vec2::ZERO;
    for &(p, t) in lines {
        // projector onto the line normal
        let (m00, m01, m11) = (1.0 - t.x * t.x, -t.x * t.y, 1.0 - t.y * t.y);
        a += m00;
        b += m01;
        c += m11;
        rhs += Vec2::new(m00 * p.x + m01 * p.y, m01 * p.x + m11 * p.y);
    }
    let n = lines.len() as f64;
    let det = a * c - b * b;
    let tr = a + c;
    let lmin = 0.5 * (tr - ((a - c).powi(2) + 4.0 * b * b).sqrt());
    if n < 2.0 || lmin / n < 1e-4 || det == 0.0 {
        return None;
    }
    Some(Vec2::new(
        (c * rhs.x - b * rhs.y) / det,
        (a * rhs.y - b * rhs.x) / det,
    ))
}

fn distance_to_line(p: Vec2, (c, t): (Vec2, Vec2)) -> f64 {
    (p - c).dot(t.perp()).abs()
}

/// Largest sampled difference quotient over neighbour pairs and seeded
/// random pairs inside the window.
fn lipschitz_estimate(u: &GridField2, window: &Window, seed: u64) -> (f64, usize) {
    let spec = &u.spec;
    let idx = window.node_indices(spec);
    let mut best: f64 = 0.0;
    let mut count = 0;
    let mut quotient = |a: usize, b: usize| {
        let d = (spec.node_at(a) - spec.node_at(b)).norm();
        best = best.max((u.values[a] - u.values[b]).norm() / d);
        count += 1;
    };
    for &k in &idx {
        let (i, j) = spec.ij(k);
        for (di, dj) in [(1, 0), (0, 1), (1, 1), (1, -1)] {
            let (ni, nj) = (i as isize + di, j as isize + dj);
            if ni < 0 || nj < 0 || ni as usize >= spec.nx || nj as usize >= spec.ny {
                continue;
            }
            let n = spec.index(ni as usize, nj as usize);
            if window.contains(spec.node_at(n)) {
                quotient(k, n);
            }
        }
    }
    for (a, b) in random_pairs(&idx, 4 * idx.len().min(4096), seed) {
        quotient(a, b);
    }
    (best, count)
}

/// Vortex-or-Lipschitz alternative on `window` at scale `d`.
///
/// Characteristics are traced from a lattice of window seeds and fitted by
/// lines. If every line passes within `cluster_tol · h` of one point `P`
/// with `dist(P, window) < d`, the window is explained by a vortex centred
/// at `P` whose sign is the window average of `sign((x-P)^⊥ · u(x))`.
/// Otherwise `u` should be `1/d`-Lipschitz on the window.
pub fn classify(
    u: &GridField2,
    window: &Window,
    d: f64,
    tol: &Tolerances,
) -> Result<ClassificationReport> {
    let spec = &u.spec;
    let h = spec.h;
    let (ex, ey) = window.node_extent(spec);
    if ex < 4 || ey < 4 {
        return Err(Error::WindowTooSmall(format!(
            "window spans {ex} x {ey} nodes, need 4 x 4"
        )));
    }
    if !(d > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "scale d must be positive, got {d}"
        )));
    }
    let seed_idx = seeds(u, window, 8);
    let max_steps = 4 * (spec.nx + spec.ny);
    let traced: Vec<Option<((Vec2, Vec2), f64)>> = seed_idx
        .par_iter()
        .map(|&k| {
            let c = trace_bidirectional(u, spec.node_at(k), h / 2.0, max_steps).ok()?;
            let len = c.length();
            if len < 2.0 * h {
                return None;
            }
            Some((c.line_fit()?, c.straightness_defect() / len))
        })
        .collect();
    let fits: Vec<((Vec2, Vec2), f64)> = traced.into_iter().flatten().collect();
    let lines: Vec<(Vec2, Vec2)> = fits.iter().map(|f| f.0).collect();
    let mean_straightness = if fits.is_empty() {
        0.0
    } else {
        fits.iter().map(|f| f.1).sum::<f64>() / fits.len() as f64
    };
    let center = common_point(&lines);
    let spread = center.map(|p| {
        lines
            .iter()
            .map(|&l| distance_to_line(p, l))
            .fold(0.0, f64::max)
    });
    let center_dist = center.map(|p| window.distance_to(p));
    let (lip, lip_pairs) = lipschitz_estimate(u, window, 0x5eed);
    let mut report = ClassificationReport {
        verdict: Verdict::Inconsistent,
        d,
        h,
        vortex_center: None,
        orientation: None,
        residual: None,
        lipschitz_constant_estimate: lip,
        evidence: Evidence {
            seeds: seed_idx.len(),
            lines: lines.len(),
            degenerate: center.is_none(),
            line_spread: spread,
            center_distance_to_window: center_dist,
            mean_straightness,
            lipschitz_pairs: lip_pairs,
        },
    };
    if let (Some(p), Some(s), Some(dist)) = (center, spread, center_dist) {
        if s <= tol.cluster_tol * h && dist < d {
            let idx = window.node_indices(spec);
            let mean: f64 = idx
                .iter()
                .map(|&k| (spec.node_at(k) - p).perp().dot(u.values[k]).signum())
                .sum::<f64>()
                / idx.len() as f64;
            let alpha = if mean >= 0.0 { 1.0 } else { -1.0 };
            let residual = idx
                .iter()
                .filter_map(|&k| {
                    let x = spec.node_at(k) - p;
                    let r = x.norm();
                    (r > 0.0).then(|| (u.values[k] - x.perp() * (alpha / r)).norm())
                })
                .fold(0.0, f64::max);
            report.vortex_center = Some(p);
            report.orientation = Some(alpha as i32);
            report.residual = Some(residual);
            if residual <= tol.vortex_residual * h {
                report.verdict = Verdict::Vortex;
            }
            return Ok(report);
        }
    }
    if lip <= (1.0 + tol.lipschitz_slack) / d {
        report.verdict = Verdict::Lipschitz;
    }
    Ok(report)
}
