//! Mollification of unit fields and the commutator quantities that control
//! `1 - |u_ε|²` and `∇u_ε` by local difference integrals.

use super::mollifier::{Mollifier, Stencil2d};
use crate::error::{Error, Result};
use crate::fields::{GridField2, GridScalar, GridSpec, Window};
use crate::geometry::{Mat2, Vec2};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `u_ε = u ⋆ ρ_ε` on the ε-interior with its kernel-differentiated Jacobian
/// and the convolved square norm `|u|² ⋆ ρ_ε`.
#[derive(Clone, Debug)]
pub struct MollifiedField {
    pub eps: f64,
    /// Interior sub-grid the outputs live on.
    pub spec: GridSpec,
    /// Offset of the sub-grid's first node in the parent grid.
    pub offset: (usize, usize),
    pub values: Vec<Vec2>,
    /// `jacobian[k][i][j] = ∂_j (u_ε)_i`.
    pub jacobian: Vec<Mat2>,
    pub mean_square: Vec<f64>,
    pub raw_mass: f64,
}

impl MollifiedField {
    pub fn compute(u: &GridField2, eps: f64) -> Result<Self> {
        let moll = Mollifier::resolvable(eps, u.spec.h)?;
        let stencil = moll.stencil(u.spec.h);
        let (sub, i0, j0) = u.spec.interior(stencil.reach as f64 * u.spec.h)?;
        let rows: Vec<Vec<(Vec2, Mat2, f64)>> = (0..sub.ny)
            .into_par_iter()
            .map(|j| {
                (0..sub.nx)
                    .map(|i| convolve_node(u, &stencil, (i0 + i) as isize, (j0 + j) as isize))
                    .collect()
            })
            .collect();
        let mut values = Vec::with_capacity(sub.len());
        let mut jacobian = Vec::with_capacity(sub.len());
        let mut mean_square = Vec::with_capacity(sub.len());
        for (v, d, m) in rows.into_iter().flatten() {
            values.push(v);
            jacobian.push(d);
            mean_square.push(m);
        }
        Ok(MollifiedField {
            eps,
            spec: sub,
            offset: (i0, j0),
            values,
            jacobian,
            mean_square,
            raw_mass: stencil.raw_mass,
        })
    }

    pub fn field(&self) -> GridField2 {
        GridField2 {
            spec: self.spec,
            values: self.values.clone(),
        }
    }

    /// `1 - |u_ε|²` in commutator form `|u|² ⋆ ρ_ε - |u ⋆ ρ_ε|²`.
    pub fn defect(&self) -> GridScalar {
        let values = self
            .mean_square
            .iter()
            .zip(&self.values)
            .map(|(m, v)| m - v.norm_sq())
            .collect();
        GridScalar {
            spec: self.spec,
            values,
        }
    }

    /// `∇ · u_ε` from the kernel-differentiated Jacobian.
    pub fn divergence(&self) -> Vec<f64> {
        self.jacobian.iter().map(|d| d[0][0] + d[1][1]).collect()
    }
}

fn convolve_node(u: &GridField2, st: &Stencil2d, i: isize, j: isize) -> (Vec2, Mat2, f64) {
    let centre = u.at(i as usize, j as usize);
    let mut v = Vec2::ZERO;
    let mut sq = 0.0;
    let mut d = [[0.0; 2]; 2];
    for ((&(di, dj), &w), &g) in st.offsets.iter().zip(&st.weights).zip(&st.grad_weights) {
        // (u ⋆ ρ)(x) = Σ_z ρ(z) u(x - z)
        let y = u.at((i - di) as usize, (j - dj) as usize);
        v += y * w;
        sq += y.norm_sq() * w;
        let diff = y - centre;
        d[0][0] += diff.x * g.x;
        d[0][1] += diff.x * g.y;
        d[1][0] += diff.y * g.x;
        d[1][1] += diff.y * g.y;
    }
    (v, d, sq)
}

/// `u ⋆ ρ_ε` restricted to the ε-interior.
pub fn mollify(u: &GridField2, eps: f64) -> Result<GridField2> {
    Ok(MollifiedField::compute(u, eps)?.field())
}

/// `1 - |u_ε|²` computed as `|u|² ⋆ ρ_ε - |u_ε|²` on the ε-interior.
pub fn defect(u: &GridField2, eps: f64) -> Result<GridScalar> {
    Ok(MollifiedField::compute(u, eps)?.defect())
}

/// Convolution evaluated at an arbitrary point using the nodes in `B_ε(p)`.
pub fn mollify_at(u: &GridField2, eps: f64, p: Vec2) -> Result<Vec2> {
    let moll = Mollifier::resolvable(eps, u.spec.h)?;
    if u.spec.boundary_distance(p) < eps {
        return Err(Error::SupportOverflow(format!(
            "point ({}, {}) is within eps of the boundary",
            p.x, p.y
        )));
    }
    let s = u.spec;
    let i_lo = ((p.x - eps - s.x0) / s.h).floor().max(0.0) as usize;
    let i_hi = (((p.x + eps - s.x0) / s.h).ceil() as usize).min(s.nx - 1);
    let j_lo = ((p.y - eps - s.y0) / s.h).floor().max(0.0) as usize;
    let j_hi = (((p.y + eps - s.y0) / s.h).ceil() as usize).min(s.ny - 1);
    let mut acc = Vec2::ZERO;
    let mut mass = 0.0;
    for j in j_lo..=j_hi {
        for i in i_lo..=i_hi {
            let w = moll.density(p - s.node(i, j));
            acc += u.at(i, j) * w;
            mass += w;
        }
    }
    Ok(acc * (1.0 / mass))
}

fn node_in_interior(u: &GridField2, st: &Stencil2d, node: (usize, usize)) -> Result<()> {
    let r = st.reach;
    if node.0 < r || node.1 < r || node.0 + r >= u.spec.nx || node.1 + r >= u.spec.ny {
        return Err(Error::SupportOverflow(format!(
            "node {node:?} is within eps of the boundary"
        )));
    }
    Ok(())
}

/// Double-convolution form `½ ΣΣ |u(x-z) - u(x-w)|² ρ_ε(z) ρ_ε(w)` of the
/// defect at one node; an independent route to [`defect`].
pub fn defect_pairwise_at(u: &GridField2, eps: f64, node: (usize, usize)) -> Result<f64> {
    let st = Mollifier::resolvable(eps, u.spec.h)?.stencil(u.spec.h);
    node_in_interior(u, &st, node)?;
    let (i, j) = (node.0 as isize, node.1 as isize);
    let vals: Vec<Vec2> = st
        .offsets
        .iter()
        .map(|&(di, dj)| u.at((i - di) as usize, (j - dj) as usize))
        .collect();
    let mut total = 0.0;
    for (a, wa) in vals.iter().zip(&st.weights) {
        let mut row = 0.0;
        for (b, wb) in vals.iter().zip(&st.weights) {
            row += (*a - *b).norm_sq() * wb;
        }
        total += row * wa;
    }
    Ok(0.5 * total)
}

/// `(2‖ρ_ε‖_∞) ∫_{B_ε} |u(x-z) - u(x)|² dz` at one node.
pub fn defect_bound_at(u: &GridField2, eps: f64, node: (usize, usize)) -> Result<f64> {
    let moll = Mollifier::resolvable(eps, u.spec.h)?;
    let st = moll.stencil(u.spec.h);
    node_in_interior(u, &st, node)?;
    let h2 = u.spec.h * u.spec.h;
    let centre = u.at(node.0, node.1);
    let (i, j) = (node.0 as isize, node.1 as isize);
    let integral: f64 = st
        .offsets
        .iter()
        .map(|&(di, dj)| (u.at((i - di) as usize, (j - dj) as usize) - centre).norm_sq() * h2)
        .sum();
    Ok(2.0 * moll.sup() / st.raw_mass * integral)
}

/// `(‖∇ρ‖_∞ / ε³) ∫_{B_ε} |u(x-z) - u(x)| dz` at one node.
pub fn derivative_bound_at(u: &GridField2, eps: f64, node: (usize, usize)) -> Result<f64> {
    let moll = Mollifier::resolvable(eps, u.spec.h)?;
    let st = moll.stencil(u.spec.h);
    node_in_interior(u, &st, node)?;
    let h2 = u.spec.h * u.spec.h;
    let centre = u.at(node.0, node.1);
    let (i, j) = (node.0 as isize, node.1 as isize);
    let integral: f64 = st
        .offsets
        .iter()
        .map(|&(di, dj)| (u.at((i - di) as usize, (j - dj) as usize) - centre).norm() * h2)
        .sum();
    Ok(Mollifier::unit_gradient_sup() / eps.powi(3) / st.raw_mass * integral)
}

/// Local third-order difference integrals over `B_ε(x)`, `x` in a window.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CetReport {
    pub eps: f64,
    pub h: f64,
    pub window: Window,
    /// `ε⁻³ ∫_W ∫_{B_ε} |u(x) - u(x+z)|³ dz dx`, the quantity bounding the defect term.
    pub value: f64,
    /// `∫_W ∫_{B_ε} |u(x) - u(x+z)|³ / |z|³ dz dx`, the localised Gagliardo tail.
    pub tail: f64,
    pub nodes: usize,
}

pub fn cet_bound(u: &GridField2, eps: f64, window: &Window) -> Result<CetReport> {
    let spec = u.spec;
    Mollifier::resolvable(eps, spec.h)?;
    if window.margin_in(&spec) < eps - 1e-12 {
        return Err(Error::SupportOverflow(
            "window closer than eps to the boundary".into(),
        ));
    }
    let h = spec.h;
    let reach = (eps / h + 1e-9).floor() as isize;
    let mut offsets = Vec::new();
    for dj in -reach..=reach {
        for di in -reach..=reach {
            let r = h * ((di * di + dj * dj) as f64).sqrt();
            if (di, dj) != (0, 0) && r <= eps * (1.0 + 1e-12) {
                offsets.push((di, dj, r.powi(3)));
            }
        }
    }
    let nodes = window.node_indices(&spec);
    let per_node: Vec<(f64, f64)> = nodes
        .par_iter()
        .map(|&k| {
            let (i, j) = spec.ij(k);
            let x = u.values[k];
            let (mut a, mut b) = (0.0, 0.0);
            for &(di, dj, r3) in &offsets {
                let y = u.at((i as isize + di) as usize, (j as isize + dj) as usize);
                let d3 = (x - y).norm().powi(3);
                a += d3;
                b += d3 / r3;
            }
            (a, b)
        })
        .collect();
    let h4 = h.powi(4);
    let (mut a, mut b) = (0.0, 0.0);
    for (x, y) in per_node {
        a += x;
        b += y;
    }
    Ok(CetReport {
        eps,
        h,
        window: *window,
        value: a * h4 / eps.powi(3),
        tail: b * h4,
        nodes: nodes.len(),
    })
}
