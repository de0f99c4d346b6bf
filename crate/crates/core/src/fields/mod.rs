//! Grid representation of planar fields, canonical generators, weak
//! divergence and field file I/O.
//!
//! Grids are node-centred: node `(i, j)` sits at `(x0 + i h, y0 + j h)` and
//! values are stored row-major with `y` outer and `x` inner.

mod bump;
mod generators;
pub mod io;
mod ops;
pub(crate) mod quadrature;

pub use bump::{TestBump, TestFunction};
pub use generators::{generate, generate_avoiding_singular, Generator, SetComponent};
pub use ops::{divergence_weak, gradient_from_stream, negate_half_plane};

use crate::error::{Error, Result};
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub nx: usize,
    pub ny: usize,
    pub x0: f64,
    pub y0: f64,
    pub h: f64,
}

impl GridSpec {
    pub fn new(nx: usize, ny: usize, x0: f64, y0: f64, h: f64) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return Err(Error::InvalidGrid(format!(
                "need nx, ny >= 2, got {nx} x {ny}"
            )));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!(
                "spacing must be positive, got {h}"
            )));
        }
        if !(x0.is_finite() && y0.is_finite()) {
            return Err(Error::InvalidGrid("origin must be finite".into()));
        }
        Ok(GridSpec { nx, ny, x0, y0, h })
    }

    /// Grid whose node cloud is symmetric about `center`.
    pub fn centered(nx: usize, ny: usize, h: f64, center: Vec2) -> Result<Self> {
        let x0 = center.x - 0.5 * (nx as f64 - 1.0) * h;
        let y0 = center.y - 0.5 * (ny as f64 - 1.0) * h;
        Self::new(nx, ny, x0, y0, h)
    }

    /// Same grid translated by `(dx, dy)`.
    pub fn shifted(&self, dx: f64, dy: f64) -> Self {
        GridSpec {
            x0: self.x0 + dx,
            y0: self.y0 + dy,
            ..*self
        }
    }

    /// Translate by half a cell in both directions.
    pub fn half_shifted(&self) -> Self {
        self.shifted(0.5 * self.h, 0.5 * self.h)
    }

    /// Same physical extent origin, spacing halved.
    pub fn refined(&self) -> Self {
        GridSpec {
            nx: 2 * self.nx - 1,
            ny: 2 * self.ny - 1,
            h: 0.5 * self.h,
            ..*self
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    #[inline]
    pub fn ij(&self, index: usize) -> (usize, usize) {
        (index % self.nx, index / self.nx)
    }

    #[inline]
    pub fn node(&self, i: usize, j: usize) -> Vec2 {
        Vec2::new(self.x0 + i as f64 * self.h, self.y0 + j as f64 * self.h)
    }

    #[inline]
    pub fn node_at(&self, index: usize) -> Vec2 {
        let (i, j) = self.ij(index);
        self.node(i, j)
    }

    #[inline]
    pub fn x_max(&self) -> f64 {
        self.x0 + (self.nx - 1) as f64 * self.h
    }

    #[inline]
    pub fn y_max(&self) -> f64 {
        self.y0 + (self.ny - 1) as f64 * self.h
    }

    pub fn contains(&self, p: Vec2) -> bool {
        p.x >= self.x0 && p.x <= self.x_max() && p.y >= self.y0 && p.y <= self.y_max()
    }

    /// Distance from `p` to the grid boundary (negative outside).
    pub fn boundary_distance(&self, p: Vec2) -> f64 {
        (p.x - self.x0)
            .min(self.x_max() - p.x)
            .min(p.y - self.y0)
            .min(self.y_max() - p.y)
    }

    /// Cell containing `p` and the local coordinates in `[0, 1]^2`.
    pub fn locate(&self, p: Vec2) -> Option<(usize, usize, f64, f64)> {
        if !self.contains(p) {
            return None;
        }
        let fx = (p.x - self.x0) / self.h;
        let fy = (p.y - self.y0) / self.h;
        let i = (fx.floor() as usize).min(self.nx - 2);
        let j = (fy.floor() as usize).min(self.ny - 2);
        Some((i, j, fx - i as f64, fy - j as f64))
    }

    /// Sub-grid of nodes at distance at least `margin` from the boundary,
    /// together with the index offset of its first node.
    pub fn interior(&self, margin: f64) -> Result<(GridSpec, usize, usize)> {
        let m = (margin / self.h - 1e-9).ceil().max(0.0) as usize;
        if self.nx < 2 * m + 2 || self.ny < 2 * m + 2 {
            return Err(Error::InvalidGrid(format!(
                "margin {margin} leaves fewer than 2x2 interior nodes"
            )));
        }
        let sub = GridSpec {
            nx: self.nx - 2 * m,
            ny: self.ny - 2 * m,
            x0: self.x0 + m as f64 * self.h,
            y0: self.y0 + m as f64 * self.h,
            h: self.h,
        };
        Ok((sub, m, m))
    }
}

/// Vector field sampled at grid nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridField2 {
    pub spec: GridSpec,
    pub values: Vec<Vec2>,
}

impl GridField2 {
    pub fn new(spec: GridSpec, values: Vec<Vec2>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::ValueCountMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        Ok(GridField2 { spec, values })
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Vec2) -> Vec2) -> Self {
        let values = (0..spec.len()).map(|k| f(spec.node_at(k))).collect();
        GridField2 { spec, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Vec2 {
        self.values[self.spec.index(i, j)]
    }

    /// Bilinear interpolation; `None` outside the domain.
    pub fn interpolate(&self, p: Vec2) -> Option<Vec2> {
        let (i, j, fx, fy) = self.spec.locate(p)?;
        let a = self.at(i, j);
        let b = self.at(i + 1, j);
        let c = self.at(i, j + 1);
        let d = self.at(i + 1, j + 1);
        Some(
            a * ((1.0 - fx) * (1.0 - fy))
                + b * (fx * (1.0 - fy))
                + c * ((1.0 - fx) * fy)
                + d * (fx * fy),
        )
    }

    pub fn max_unit_deviation(&self) -> f64 {
        self.values
            .iter()
            .map(|v| (v.norm() - 1.0).abs())
            .fold(0.0, f64::max)
    }

    /// Errors on the first node with `||u| - 1| > tol`.
    pub fn check_unit(&self, tol: f64) -> Result<()> {
        for (index, v) in self.values.iter().enumerate() {
            let deviation = (v.norm() - 1.0).abs();
            if !(deviation <= tol) {
                return Err(Error::NotUnit { index, deviation });
            }
        }
        Ok(())
    }

    pub fn is_unit(&self, tol: f64) -> bool {
        self.check_unit(tol).is_ok()
    }

    /// Restriction to an index block starting at `(i0, j0)` with the shape of `sub`.
    pub fn restrict(&self, sub: GridSpec, i0: usize, j0: usize) -> GridField2 {
        let mut values = Vec::with_capacity(sub.len());
        for j in 0..sub.ny {
            for i in 0..sub.nx {
                values.push(self.at(i0 + i, j0 + j));
            }
        }
        GridField2 { spec: sub, values }
    }
}

/// Scalar field sampled at grid nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct GridScalar {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl GridScalar {
    pub fn new(spec: GridSpec, values: Vec<f64>) -> Result<Self> {
        if values.len() != spec.len() {
            return Err(Error::ValueCountMismatch {
                expected: spec.len(),
                found: values.len(),
            });
        }
        Ok(GridScalar { spec, values })
    }

    pub fn from_fn(spec: GridSpec, mut f: impl FnMut(Vec2) -> f64) -> Self {
        let values = (0..spec.len()).map(|k| f(spec.node_at(k))).collect();
        GridScalar { spec, values }
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[self.spec.index(i, j)]
    }

    pub fn interpolate(&self, p: Vec2) -> Option<f64> {
        let (i, j, fx, fy) = self.spec.locate(p)?;
        Some(
            self.at(i, j) * (1.0 - fx) * (1.0 - fy)
                + self.at(i + 1, j) * fx * (1.0 - fy)
                + self.at(i, j + 1) * (1.0 - fx) * fy
                + self.at(i + 1, j + 1) * fx * fy,
        )
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

/// Sub-region of the plane used to localise sums.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Window {
    Rect { lo: Vec2, hi: Vec2 },
    Annulus { center: Vec2, r_in: f64, r_out: f64 },
}

impl Window {
    pub fn rect(x_lo: f64, y_lo: f64, x_hi: f64, y_hi: f64) -> Self {
        Window::Rect {
            lo: Vec2::new(x_lo, y_lo),
            hi: Vec2::new(x_hi, y_hi),
        }
    }

    pub fn annulus(center: Vec2, r_in: f64, r_out: f64) -> Self {
        Window::Annulus {
            center,
            r_in,
            r_out,
        }
    }

    pub fn contains(&self, p: Vec2) -> bool {
        match *self {
            Window::Rect { lo, hi } => p.x >= lo.x && p.x <= hi.x && p.y >= lo.y && p.y <= hi.y,
            Window::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let r = (p - center).norm();
                r >= r_in && r <= r_out
            }
        }
    }

    pub fn bbox(&self) -> (Vec2, Vec2) {
        match *self {
            Window::Rect { lo, hi } => (lo, hi),
            Window::Annulus { center, r_out, .. } => (
                Vec2::new(center.x - r_out, center.y - r_out),
                Vec2::new(center.x + r_out, center.y + r_out),
            ),
        }
    }

    /// Smallest distance from the window to `p` (zero if contained).
    pub fn distance_to(&self, p: Vec2) -> f64 {
        match *self {
            Window::Rect { lo, hi } => {
                let dx = (lo.x - p.x).max(0.0).max(p.x - hi.x);
                let dy = (lo.y - p.y).max(0.0).max(p.y - hi.y);
                dx.hypot(dy)
            }
            Window::Annulus {
                center,
                r_in,
                r_out,
            } => {
                let r = (p - center).norm();
                (r_in - r).max(0.0).max(r - r_out)
            }
        }
    }

    /// Distance from the window to the boundary of `spec` (negative if it pokes out).
    pub fn margin_in(&self, spec: &GridSpec) -> f64 {
        let (lo, hi) = self.bbox();
        spec.boundary_distance(lo).min(spec.boundary_distance(hi))
    }

    /// Indices of grid nodes inside the window, in storage order.
    pub fn node_indices(&self, spec: &GridSpec) -> Vec<usize> {
        let (lo, hi) = self.bbox();
        let i_lo = (((lo.x - spec.x0) / spec.h).ceil().max(0.0)) as usize;
        let j_lo = (((lo.y - spec.y0) / spec.h).ceil().max(0.0)) as usize;
        let i_hi = (((hi.x - spec.x0) / spec.h).floor()).min(spec.nx as f64 - 1.0);
        let j_hi = (((hi.y - spec.y0) / spec.h).floor()).min(spec.ny as f64 - 1.0);
        let mut out = Vec::new();
        if i_hi < 0.0 || j_hi < 0.0 {
            return out;
        }
        for j in j_lo..=(j_hi as usize) {
            for i in i_lo..=(i_hi as usize) {
                if self.contains(spec.node(i, j)) {
                    out.push(spec.index(i, j));
                }
            }
        }
        out
    }

    /// Node counts along x and y of the window's node block (bounding box).
    pub fn node_extent(&self, spec: &GridSpec) -> (usize, usize) {
        let idx = self.node_indices(spec);
        if idx.is_empty() {
            return (0, 0);
        }
        let (mut imin, mut imax, mut jmin, mut jmax) = (usize::MAX, 0, usize::MAX, 0);
        for k in idx {
            let (i, j) = spec.ij(k);
            imin = imin.min(i);
            imax = imax.max(i);
            jmin = jmin.min(j);
            jmax = jmax.max(j);
        }
        (imax - imin + 1, jmax - jmin + 1)
    }
}
