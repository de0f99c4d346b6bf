use crate::fields::{TestBump, TestFunction};
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

/// Test functions `ζ(t, s)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum SpaceTimeBump {
    /// The planar bump profile with `(x, y) = (t, s)`.
    Bump { t: f64, s: f64, radius: f64 },
    /// Equal to 1 on `[t_lo + ramp, t_hi - ramp] × [s_lo + ramp, s_hi - ramp]`,
    /// smooth quintic ramps, supported in `[t_lo, t_hi] × [s_lo, s_hi]`.
    Plateau {
        t_lo: f64,
        t_hi: f64,
        s_lo: f64,
        s_hi: f64,
        ramp: f64,
    },
}

/// Quintic smoothstep clamped to `[0, 1]`, with derivative.
fn ramp(x: f64) -> (f64, f64) {
    if x <= 0.0 {
        (0.0, 0.0)
    } else if x >= 1.0 {
        (1.0, 0.0)
    } else {
        (
            x * x * x * (10.0 + x * (-15.0 + 6.0 * x)),
            30.0 * x * x * (x - 1.0) * (x - 1.0),
        )
    }
}

/// Profile in one variable on `[lo, hi]` with ramps of width `w`.
fn plateau_1d(x: f64, lo: f64, hi: f64, w: f64) -> (f64, f64) {
    let (a, da) = ramp((x - lo) / w);
    let (b, db) = ramp((hi - x) / w);
    (a * b, (da * b - a * db) / w)
}

impl SpaceTimeBump {
    fn planar(t: f64, s: f64, radius: f64) -> TestBump {
        TestBump::new(Vec2::new(t, s), radius)
    }

    pub fn value(&self, t: f64, s: f64) -> f64 {
        match *self {
            SpaceTimeBump::Bump {
                t: ct,
                s: cs,
                radius,
            } => Self::planar(ct, cs, radius).value(Vec2::new(t, s)),
            SpaceTimeBump::Plateau {
                t_lo,
                t_hi,
                s_lo,
                s_hi,
                ramp,
            } => plateau_1d(t, t_lo, t_hi, ramp).0 * plateau_1d(s, s_lo, s_hi, ramp).0,
        }
    }

    /// `(ζ_t, ζ_s)`.
    pub fn gradient(&self, t: f64, s: f64) -> (f64, f64) {
        match *self {
            SpaceTimeBump::Bump {
                t: ct,
                s: cs,
                radius,
            } => {
                let g = Self::planar(ct, cs, radius).gradient(Vec2::new(t, s));
                (g.x, g.y)
            }
            SpaceTimeBump::Plateau {
                t_lo,
                t_hi,
                s_lo,
                s_hi,
                ramp,
            } => {
                let (a, da) = plateau_1d(t, t_lo, t_hi, ramp);
                let (b, db) = plateau_1d(s, s_lo, s_hi, ramp);
                (da * b, a * db)
            }
        }
    }

    /// `((t_lo, s_lo), (t_hi, s_hi))` of the support.
    pub fn bbox(&self) -> ((f64, f64), (f64, f64)) {
        match *self {
            SpaceTimeBump::Bump { t, s, radius } => {
                ((t - radius, s - radius), (t + radius, s + radius))
            }
            SpaceTimeBump::Plateau {
                t_lo,
                t_hi,
                s_lo,
                s_hi,
                ..
            } => ((t_lo, s_lo), (t_hi, s_hi)),
        }
    }

    pub fn sup(&self) -> f64 {
        match self {
            SpaceTimeBump::Bump { .. } => (-1.0f64).exp(),
            SpaceTimeBump::Plateau { .. } => 1.0,
        }
    }
}
