//! Midpoint quadrature of weak pairings on grid cells.
//!
//! Node data are composed first; each cell contributes the average of its
//! four corner values (bilinear interpolation at the centre) times the
//! analytic test-function quantity at the centre.

use super::bump::TestFunction;
use super::GridSpec;
use crate::error::{Error, Result};
use crate::geometry::Vec2;

/// Rejects supports that come closer than `margin` to the grid boundary.
pub(crate) fn check_support(spec: &GridSpec, bbox: (Vec2, Vec2), margin: f64) -> Result<()> {
    let d = spec
        .boundary_distance(bbox.0)
        .min(spec.boundary_distance(bbox.1));
    if d < margin - 1e-12 * spec.h {
        return Err(Error::SupportOverflow(format!(
            "support [{}, {}] x [{}, {}] is {d} from the boundary, need {margin}",
            bbox.0.x, bbox.1.x, bbox.0.y, bbox.1.y
        )));
    }
    Ok(())
}

/// Cell block `[i_lo, i_hi) x [j_lo, j_hi)` covering the bounding box.
fn cell_range(spec: &GridSpec, bbox: (Vec2, Vec2)) -> (usize, usize, usize, usize) {
    let clamp = |v: f64, hi: usize| (v.max(0.0) as usize).min(hi);
    let i_lo = clamp(((bbox.0.x - spec.x0) / spec.h).floor(), spec.nx - 1);
    let j_lo = clamp(((bbox.0.y - spec.y0) / spec.h).floor(), spec.ny - 1);
    let i_hi = clamp(((bbox.1.x - spec.x0) / spec.h).ceil(), spec.nx - 1);
    let j_hi = clamp(((bbox.1.y - spec.y0) / spec.h).ceil(), spec.ny - 1);
    (i_lo, i_hi, j_lo, j_hi)
}

/// Generic cell loop: node data come from `node`, each cell contributes
/// `cell(avg, centre)`; the sum is taken in fixed row-major order.
pub(crate) fn cell_sum<T, N, C>(spec: &GridSpec, bbox: (Vec2, Vec2), node: N, cell: C) -> f64
where
    T: Copy + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    N: Fn(usize) -> T,
    C: Fn(T, Vec2) -> f64,
{
    let (i_lo, i_hi, j_lo, j_hi) = cell_range(spec, bbox);
    if i_hi <= i_lo || j_hi <= j_lo {
        return 0.0;
    }
    let w = i_hi - i_lo + 1;
    let mut cache = Vec::with_capacity(w * (j_hi - j_lo + 1));
    for j in j_lo..=j_hi {
        for i in i_lo..=i_hi {
            cache.push(node(spec.index(i, j)));
        }
    }
    let h = spec.h;
    let mut total = 0.0;
    for j in j_lo..j_hi {
        let mut row = 0.0;
        for i in i_lo..i_hi {
            let a = (j - j_lo) * w + (i - i_lo);
            let avg = (cache[a] + cache[a + 1] + cache[a + w] + cache[a + w + 1]) * 0.25;
            let c = Vec2::new(
                spec.x0 + (i as f64 + 0.5) * h,
                spec.y0 + (j as f64 + 0.5) * h,
            );
            row += cell(avg, c);
        }
        total += row;
    }
    total * h * h
}

/// `-∫ F · ∇ζ` for node data `F`.
pub(crate) fn pair_divergence<Z: TestFunction>(
    spec: &GridSpec,
    zeta: &Z,
    node: impl Fn(usize) -> Vec2,
) -> f64 {
    -cell_sum(spec, zeta.bbox(), node, |f: Vec2, c| {
        f.dot(zeta.gradient(c))
    })
}

/// `∫ f ζ` for scalar node data.
pub(crate) fn pair_value<Z: TestFunction>(
    spec: &GridSpec,
    zeta: &Z,
    node: impl Fn(usize) -> f64,
) -> f64 {
    cell_sum(spec, zeta.bbox(), node, |f: f64, c| f * zeta.value(c))
}
