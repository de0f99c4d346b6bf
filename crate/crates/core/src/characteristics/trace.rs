use crate::error::{Error, Result};
use crate::fields::GridField2;
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};
use std::io::Write;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceStatus {
    Exited,
    HitSingularity,
    MaxSteps,
}

/// Polyline `X(t_i, x)`, `t_i = i dt`, of a traced characteristic.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Characteristic {
    pub seed: Vec2,
    pub dt: f64,
    pub points: Vec<Vec2>,
    pub status: TraceStatus,
}

enum Sample {
    Velocity(Vec2),
    Outside,
    Singular,
}

/// Unit-renormalised `u^⊥` at `p`, or why it is unavailable.
fn velocity(u: &GridField2, p: Vec2, sign: f64) -> Sample {
    match u.interpolate(p) {
        None => Sample::Outside,
        Some(w) if w.norm() <= 0.5 => Sample::Singular,
        Some(w) => Sample::Velocity(w.normalized().perp() * sign),
    }
}

fn integrate(
    u: &GridField2,
    seed: Vec2,
    dt: f64,
    max_steps: usize,
    sign: f64,
) -> Result<Characteristic> {
    if !u.spec.contains(seed) {
        return Err(Error::SeedOutsideDomain {
            x: seed.x,
            y: seed.y,
        });
    }
    if !(dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "time step must be positive, got {dt}"
        )));
    }
    let mut points = vec![seed];
    let mut x = seed;
    let mut status = TraceStatus::MaxSteps;
    for _ in 0..max_steps {
        let k1 = match velocity(u, x, sign) {
            Sample::Velocity(v) => v,
            Sample::Outside => {
                status = TraceStatus::Exited;
                break;
            }
            Sample::Singular => {
                status = TraceStatus::HitSingularity;
                break;
            }
        };
        let k2 = match velocity(u, x + k1 * (0.5 * dt), sign) {
            Sample::Velocity(v) => v,
            Sample::Outside => {
                status = TraceStatus::Exited;
                break;
            }
            Sample::Singular => {
                status = TraceStatus::HitSingularity;
                break;
            }
        };
        let next = x + k2 * dt;
        if !u.spec.contains(next) {
            status = TraceStatus::Exited;
            break;
        }
        x = next;
        points.push(x);
    }
    Ok(Characteristic {
        seed,
        dt,
        points,
        status,
    })
}

/// Midpoint-rule integration of `Ẋ = u^⊥(X)` with bilinear interpolation.
///
/// Stops at the boundary, after `max_steps`, or where `|u|` interpolates to
/// at most `1/2`.
pub fn trace(u: &GridField2, seed: Vec2, dt: f64, max_steps: usize) -> Result<Characteristic> {
    integrate(u, seed, dt, max_steps, 1.0)
}

/// Backward and forward traces joined into one polyline through the seed,
/// ordered in the direction of `u^⊥`. The status is that of the forward end.
pub fn trace_bidirectional(
    u: &GridField2,
    seed: Vec2,
    dt: f64,
    max_steps: usize,
) -> Result<Characteristic> {
    let back = integrate(u, seed, dt, max_steps, -1.0)?;
    let fwd = integrate(u, seed, dt, max_steps, 1.0)?;
    let mut points: Vec<Vec2> = back.points.into_iter().rev().collect();
    points.extend(fwd.points.into_iter().skip(1));
    Ok(Characteristic {
        seed,
        dt,
        points,
        status: fwd.status,
    })
}

impl Characteristic {
    pub fn length(&self) -> f64 {
        self.points.windows(2).map(|w| (w[1] - w[0]).norm()).sum()
    }

    /// Largest distance of a polyline point to the end-to-end chord.
    pub fn straightness_defect(&self) -> f64 {
        let (a, b) = match (self.points.first(), self.points.last()) {
            (Some(&a), Some(&b)) => (a, b),
            _ => return 0.0,
        };
        let chord = b - a;
        let len = chord.norm();
        if len == 0.0 {
            return 0.0;
        }
        let n = chord.perp() * (1.0 / len);
        self.points
            .iter()
            .map(|p| (*p - a).dot(n).abs())
            .fold(0.0, f64::max)
    }

    /// Principal-axis line fit `(centroid, unit direction)`, `None` for
    /// fewer than two distinct points.
    pub fn line_fit(&self) -> Option<(Vec2, Vec2)> {
        if self.points.len() < 2 {
            return None;
        }
        let n = self.points.len() as f64;
        let c = self.points.iter().fold(Vec2::ZERO, |acc, p| acc + *p) * (1.0 / n);
        let (mut sxx, mut sxy, mut syy) = (0.0, 0.0, 0.0);
        for p in &self.points {
            let d = *p - c;
            sxx += d.x * d.x;
            sxy += d.x * d.y;
            syy += d.y * d.y;
        }
        if sxx + syy == 0.0 {
            return None;
        }
        let angle = 0.5 * (2.0 * sxy).atan2(sxx - syy);
        Some((c, Vec2::from_angle(angle)))
    }

    /// CSV with header `t,x1,x2`.
    pub fn write_csv(&self, mut w: impl Write) -> Result<()> {
        writeln!(w, "t,x1,x2")?;
        for (i, p) in self.points.iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", i as f64 * self.dt, p.x, p.y)?;
        }
        Ok(())
    }
}

/// Mean of `|u - u(m)|` over the strip of half-width `r` around the segment
/// `[a, b]`, with `m` the segment midpoint, sampled on an `n × n` lattice.
/// For a field with a trace on the segment this tends to the segment mean of
/// `|u - u(m)|` as `r → 0`.
pub fn strip_average_defect(u: &GridField2, a: Vec2, b: Vec2, r: f64, n: usize) -> Option<f64> {
    let mid = u.interpolate((a + b) * 0.5)?;
    let along = b - a;
    let normal = along.normalized().perp();
    let mut total = 0.0;
    for j in 0..n {
        let off = -r + 2.0 * r * (j as f64 + 0.5) / n as f64;
        for i in 0..n {
            let p = a + along * ((i as f64 + 0.5) / n as f64) + normal * off;
            total += (u.interpolate(p)? - mid).norm();
        }
    }
    Some(total / (n * n) as f64)
}
