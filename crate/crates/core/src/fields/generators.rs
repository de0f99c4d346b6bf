//! Canonical unit fields: vortex, rotated distance gradients, straight
//! jumps, constants and the oscillating `e^{i log|log|x1||}` field.

use super::{GridField2, GridSpec};
use crate::error::{Error, Result};
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

/// Component of the closed set `K` for distance fields.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum SetComponent {
    Point {
        at: Vec2,
    },
    /// Boundary of a convex polygon, vertices in order.
    Polygon {
        vertices: Vec<Vec2>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Generator {
    /// `α (x - P)^⊥ / |x - P|`.
    Vortex {
        center: Vec2,
        alpha: f64,
    },
    /// `∇^⊥ dist(·, K)`.
    Distance {
        set: Vec<SetComponent>,
    },
    /// `±τ` on either side of the line through `point` with tangent angle `angle`;
    /// `+τ` on the side the normal `τ^⊥` points into.
    Jump {
        point: Vec2,
        angle: f64,
    },
    Constant {
        value: Vec2,
    },
    /// `e^{iφ(x1)}` with `φ(t) = log|log|t||`, defined for `0 < |x1| < 1`.
    Loglog,
}

impl Generator {
    pub fn vortex(center: Vec2, alpha: f64) -> Self {
        Generator::Vortex { center, alpha }
    }

    /// `u = (1, 0)` above the `x1` axis and `(-1, 0)` below.
    pub fn horizontal_jump() -> Self {
        Generator::Jump {
            point: Vec2::ZERO,
            angle: 0.0,
        }
    }

    pub fn constant(value: Vec2) -> Self {
        Generator::Constant { value }
    }

    pub fn distance_to_rectangle(lo: Vec2, hi: Vec2) -> Self {
        Generator::Distance {
            set: vec![SetComponent::Polygon {
                vertices: vec![lo, Vec2::new(hi.x, lo.y), hi, Vec2::new(lo.x, hi.y)],
            }],
        }
    }

    pub fn distance_to_point(at: Vec2) -> Self {
        Generator::Distance {
            set: vec![SetComponent::Point { at }],
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Generator::Vortex { .. } => "vortex",
            Generator::Distance { .. } => "distance",
            Generator::Jump { .. } => "jump",
            Generator::Constant { .. } => "constant",
            Generator::Loglog => "loglog",
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            Generator::Vortex { alpha, .. } if *alpha != 1.0 && *alpha != -1.0 => Err(
                Error::InvalidParameter(format!("vortex sign must be +1 or -1, got {alpha}")),
            ),
            Generator::Distance { set } => {
                if set.is_empty() {
                    return Err(Error::InvalidParameter("distance set K is empty".into()));
                }
                for c in set {
                    if let SetComponent::Polygon { vertices } = c {
                        check_convex(vertices)?;
                    }
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }

    /// Field value at `p`, or `None` if `p` is on the singular set.
    pub fn sample(&self, p: Vec2, h: f64) -> Option<Vec2> {
        match self {
            Generator::Vortex { center, alpha } => {
                let w = p - *center;
                let r = w.norm();
                if r <= 1e-12 * h {
                    None
                } else {
                    Some(w.perp() * (*alpha / r))
                }
            }
            Generator::Distance { set } => distance_gradient(set, p, h).map(|g| g.perp()),
            Generator::Jump { point, angle } => {
                let tau = Vec2::from_angle(*angle);
                let side = (p - *point).dot(tau.perp());
                if side.abs() <= 1e-12 * h {
                    None
                } else if side > 0.0 {
                    Some(tau)
                } else {
                    Some(-tau)
                }
            }
            Generator::Constant { value } => Some(*value),
            Generator::Loglog => {
                let t = p.x.abs();
                if t <= 1e-12 * h || t >= 1.0 {
                    None
                } else {
                    Some(Vec2::from_angle(t.ln().abs().ln()))
                }
            }
        }
    }
}

fn check_convex(v: &[Vec2]) -> Result<()> {
    if v.len() < 3 {
        return Err(Error::InvalidParameter(
            "polygon needs at least 3 vertices".into(),
        ));
    }
    let n = v.len();
    let mut sign = 0.0;
    for k in 0..n {
        let a = v[k];
        let b = v[(k + 1) % n];
        let c = v[(k + 2) % n];
        let cross = (b - a).perp().dot(c - b);
        if cross.abs() < 1e-14 {
            continue;
        }
        if sign == 0.0 {
            sign = cross.signum();
        } else if cross.signum() != sign {
            return Err(Error::InvalidParameter("polygon is not convex".into()));
        }
    }
    if sign == 0.0 {
        return Err(Error::InvalidParameter("polygon is degenerate".into()));
    }
    Ok(())
}

fn nearest_on_segment(p: Vec2, a: Vec2, b: Vec2) -> Vec2 {
    let d = b - a;
    let t = ((p - a).dot(d) / d.norm_sq()).clamp(0.0, 1.0);
    a + d * t
}

/// `∇ dist(·, K)` at `p` from the analytic nearest-point map; `None` on `K`
/// or on its medial axis (two distinct nearest points).
fn distance_gradient(set: &[SetComponent], p: Vec2, h: f64) -> Option<Vec2> {
    let mut candidates: Vec<Vec2> = Vec::new();
    for c in set {
        match c {
            SetComponent::Point { at } => candidates.push(*at),
            SetComponent::Polygon { vertices } => {
                let n = vertices.len();
                for k in 0..n {
                    candidates.push(nearest_on_segment(p, vertices[k], vertices[(k + 1) % n]));
                }
            }
        }
    }
    let (pi, di) = candidates.iter().map(|q| (*q, (p - *q).norm())).fold(
        (Vec2::ZERO, f64::INFINITY),
        |acc, x| if x.1 < acc.1 { x } else { acc },
    );
    if di <= 1e-12 * h {
        return None;
    }
    let tie = 1e-10 * h;
    let tied = candidates
        .iter()
        .any(|q| ((p - *q).norm() - di).abs() <= tie && (*q - pi).norm() > tie);
    if tied {
        return None;
    }
    Some((p - pi) * (1.0 / di))
}

/// Samples the generator at every node; errors on the first singular node.
pub fn generate(generator: &Generator, spec: GridSpec) -> Result<GridField2> {
    generator.validate()?;
    let mut values = Vec::with_capacity(spec.len());
    for index in 0..spec.len() {
        let p = spec.node_at(index);
        match generator.sample(p, spec.h) {
            Some(v) => values.push(v),
            None => {
                return Err(Error::SingularNode {
                    index,
                    x: p.x,
                    y: p.y,
                })
            }
        }
    }
    GridField2::new(spec, values)
}

/// Like [`generate`], but retries on half-shifted grids when a node hits the
/// singular set. Returns the field on the grid that worked.
pub fn generate_avoiding_singular(generator: &Generator, spec: GridSpec) -> Result<GridField2> {
    let h = spec.h;
    let shifts = [
        (0.0, 0.0),
        (0.5, 0.5),
        (0.5, 0.0),
        (0.0, 0.5),
        (1.0 / 3.0, 0.5),
    ];
    let mut last = None;
    for (sx, sy) in shifts {
        match generate(generator, spec.shifted(sx * h, sy * h)) {
            Ok(f) => return Ok(f),
            Err(e @ Error::SingularNode { .. }) => last = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last.expect("at least one attempt"))
}
