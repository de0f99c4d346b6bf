use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fields::GridField2;
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, SQRT_2};

/// Closed sampling curve, traversed counter-clockwise.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum Loop {
    /// `samples` bilinear samples on a circle.
    Circle {
        center: Vec2,
        radius: f64,
        samples: usize,
    },
    /// Boundary nodes of the node block `[i0, i1] × [j0, j1]`.
    GridRect {
        i0: usize,
        j0: usize,
        i1: usize,
        j1: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WindingReport {
    pub raw: f64,
    pub degree: i64,
    pub samples: usize,
}

fn loop_samples(u: &GridField2, lp: &Loop) -> Result<Vec<Vec2>> {
    match *lp {
        Loop::Circle {
            center,
            radius,
            samples,
        } => {
            if samples < 3 || !(radius > 0.0) {
                return Err(Error::InvalidParameter(
                    "circle loop needs radius > 0 and 3 samples".into(),
                ));
            }
            (0..samples)
                .map(|k| {
                    let p =
                        center + Vec2::from_angle(2.0 * PI * k as f64 / samples as f64) * radius;
                    u.interpolate(p)
                        .ok_or(Error::SeedOutsideDomain { x: p.x, y: p.y })
                })
                .collect()
        }
        Loop::GridRect { i0, j0, i1, j1 } => {
            if i1 <= i0 || j1 <= j0 || i1 >= u.spec.nx || j1 >= u.spec.ny {
                return Err(Error::InvalidParameter(format!(
                    "grid loop [{i0}, {i1}] x [{j0}, {j1}] is empty or leaves the grid"
                )));
            }
            let mut out = Vec::new();
            out.extend((i0..i1).map(|i| u.at(i, j0)));
            out.extend((j0..j1).map(|j| u.at(i1, j)));
            out.extend((i0 + 1..=i1).rev().map(|i| u.at(i, j1)));
            out.extend((j0 + 1..=j1).rev().map(|j| u.at(i0, j)));
            Ok(out)
        }
    }
}

/// Degree of `u` along the loop: the sum of principal angle increments
/// divided by `2π`.
///
/// Every step must satisfy `|u(x_{k+1}) - u(x_k)| < √2` so the increment is
/// below `π/2` and the sum is unambiguous.
pub fn winding_number(u: &GridField2, lp: &Loop, tol: &Tolerances) -> Result<WindingReport> {
    let samples = loop_samples(u, lp)?;
    let n = samples.len();
    let mut total = 0.0;
    for k in 0..n {
        let a = samples[k];
        let b = samples[(k + 1) % n];
        if a.norm() <= 0.5 || b.norm() <= 0.5 {
            return Err(Error::InvalidParameter(format!(
                "loop sample {k} is at a singular point"
            )));
        }
        let (a, b) = (a.normalized(), b.normalized());
        let jump = (b - a).norm();
        if jump >= SQRT_2 {
            return Err(Error::UnderResolvedLoop { step: k, jump });
        }
        total += (a.x * b.y - a.y * b.x).atan2(a.dot(b));
    }
    let raw = total / (2.0 * PI);
    let degree = raw.round();
    if (raw - degree).abs() > tol.winding_tol {
        return Err(Error::InvalidParameter(format!(
            "winding sum {raw} is not an integer"
        )));
    }
    Ok(WindingReport {
        raw,
        degree: degree as i64,
        samples: n,
    })
}
