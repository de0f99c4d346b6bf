use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "source", rename_all = "kebab-case")]
pub enum Provenance {
    AnalyticSampled { generator: String },
    File,
}

/// Samples `v(t_i, s_j)`, `t_i = t0 + i dt`, `s_j = s0 + j ds`, stored with
/// `t` outer and `s` inner.
#[derive(Clone, Debug, PartialEq)]
pub struct SpaceTimeField {
    pub nt: usize,
    pub ns: usize,
    pub t0: f64,
    pub s0: f64,
    pub dt: f64,
    pub ds: f64,
    pub values: Vec<f64>,
    pub provenance: Provenance,
}

impl SpaceTimeField {
    pub fn new(
        nt: usize,
        ns: usize,
        t0: f64,
        s0: f64,
        dt: f64,
        ds: f64,
        values: Vec<f64>,
    ) -> Result<Self> {
        if nt < 2 || ns < 2 {
            return Err(Error::InvalidGrid(format!(
                "space-time grid needs at least 2 x 2 nodes, got {nt} x {ns}"
            )));
        }
        if !(dt > 0.0
            && ds > 0.0
            && dt.is_finite()
            && ds.is_finite()
            && t0.is_finite()
            && s0.is_finite())
        {
            return Err(Error::InvalidGrid(format!(
                "invalid space-time spacing dt = {dt}, ds = {ds}"
            )));
        }
        if values.len() != nt * ns {
            return Err(Error::ValueCountMismatch {
                expected: nt * ns,
                found: values.len(),
            });
        }
        if let Some(k) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "non-finite value at index {k}"
            )));
        }
        Ok(SpaceTimeField {
            nt,
            ns,
            t0,
            s0,
            dt,
            ds,
            values,
            provenance: Provenance::File,
        })
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.ns + j
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.ns + j]
    }

    #[inline]
    pub fn t(&self, i: usize) -> f64 {
        self.t0 + i as f64 * self.dt
    }

    #[inline]
    pub fn s(&self, j: usize) -> f64 {
        self.s0 + j as f64 * self.ds
    }

    pub fn t_max(&self) -> f64 {
        self.t(self.nt - 1)
    }

    pub fn s_max(&self) -> f64 {
        self.s(self.ns - 1)
    }

    pub fn slice(&self, i: usize) -> &[f64] {
        &self.values[i * self.ns..(i + 1) * self.ns]
    }

    /// Index of the time level nearest to `t`.
    pub fn nearest_t(&self, t: f64) -> usize {
        (((t - self.t0) / self.dt).round().max(0.0) as usize).min(self.nt - 1)
    }

    pub fn range(&self) -> (f64, f64) {
        self.values
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &v| {
                (a.min(v), b.max(v))
            })
    }
}

/// Exact weak solutions sampled at nodes.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum BurgersGenerator {
    Constant {
        c: f64,
    },
    /// Admissible shock `v_l > v_r` through `(0, s_star)` with speed `(v_l + v_r)/2`.
    Shock {
        vl: f64,
        vr: f64,
        s_star: f64,
    },
    /// Entropy-violating upward jump `v_l < v_r` on the Rankine–Hugoniot line.
    NonentropicShock {
        vl: f64,
        vr: f64,
        s_star: f64,
    },
    /// `clamp((s - s_star)/t, v_l, v_r)`, `v_l < v_r`.
    Rarefaction {
        vl: f64,
        vr: f64,
        s_star: f64,
    },
    /// Classical solution of `v0(s) = b + a sin(k s)` before breaking.
    Smooth {
        a: f64,
        k: f64,
        b: f64,
    },
}

impl BurgersGenerator {
    pub fn name(&self) -> &'static str {
        match self {
            BurgersGenerator::Constant { .. } => "constant",
            BurgersGenerator::Shock { .. } => "shock",
            BurgersGenerator::NonentropicShock { .. } => "nonentropic-shock",
            BurgersGenerator::Rarefaction { .. } => "rarefaction",
            BurgersGenerator::Smooth { .. } => "smooth",
        }
    }

    /// First time at which characteristics of the smooth generator cross.
    pub fn breaking_time(&self) -> Option<f64> {
        match *self {
            BurgersGenerator::Smooth { a, k, .. } if a * k != 0.0 => Some(1.0 / (a * k).abs()),
            _ => None,
        }
    }

    /// `(t, s)` of the jump line at time `t`, with speed, for shock kinds.
    pub fn shock_line(&self) -> Option<(f64, f64)> {
        match *self {
            BurgersGenerator::Shock { vl, vr, s_star }
            | BurgersGenerator::NonentropicShock { vl, vr, s_star } => {
                Some((s_star, 0.5 * (vl + vr)))
            }
            _ => None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match *self {
            BurgersGenerator::Shock { vl, vr, .. } if !(vl > vr) => {
                bad(format!("admissible shock needs vl > vr, got {vl} <= {vr}"))
            }
            BurgersGenerator::NonentropicShock { vl, vr, .. } if !(vl < vr) => {
                bad(format!("nonentropic shock needs vl < vr, got {vl} >= {vr}"))
            }
            BurgersGenerator::Rarefaction { vl, vr, .. } if !(vl < vr) => {
                bad(format!("rarefaction needs vl < vr, got {vl} >= {vr}"))
            }
            _ => Ok(()),
        }
    }

    /// Value at `(t, s)`. Points exactly on a jump take the mean state.
    pub fn value(&self, t: f64, s: f64) -> f64 {
        match *self {
            BurgersGenerator::Constant { c } => c,
            BurgersGenerator::Shock { vl, vr, s_star }
            | BurgersGenerator::NonentropicShock { vl, vr, s_star } => {
                let x = s_star + 0.5 * (vl + vr) * t;
                if s < x {
                    vl
                } else if s > x {
                    vr
                } else {
                    0.5 * (vl + vr)
                }
            }
            BurgersGenerator::Rarefaction { vl, vr, s_star } => ((s - s_star) / t).clamp(vl, vr),
            BurgersGenerator::Smooth { a, k, b } => {
                // v = v0(s - t v), monotone in v before breaking
                let g = |v: f64| v - (b + a * (k * (s - t * v)).sin());
                let (mut lo, mut hi) = (b - a.abs(), b + a.abs());
                if hi == lo {
                    return b;
                }
                for _ in 0..200 {
                    let mid = 0.5 * (lo + hi);
                    if g(mid) > 0.0 {
                        hi = mid;
                    } else {
                        lo = mid;
                    }
                    if hi - lo <= 1e-15 * (1.0 + mid.abs()) {
                        break;
                    }
                }
                0.5 * (lo + hi)
            }
        }
    }

    /// Samples on `nt × ns` nodes starting at `(t0, s0)`.
    pub fn sample(
        &self,
        nt: usize,
        ns: usize,
        t0: f64,
        s0: f64,
        dt: f64,
        ds: f64,
    ) -> Result<SpaceTimeField> {
        self.validate()?;
        let t_end = t0 + (nt.max(1) - 1) as f64 * dt;
        if let BurgersGenerator::Rarefaction { .. } = self {
            if t0 <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "rarefaction grid must start at t > 0, got t0 = {t0}"
                )));
            }
        }
        if let Some(tb) = self.breaking_time() {
            if t_end >= tb || t0 < 0.0 {
                return Err(Error::PastBreakingTime {
                    t: t_end,
                    breaking: tb,
                });
            }
        }
        let mut values = Vec::with_capacity(nt * ns);
        for i in 0..nt {
            let t = t0 + i as f64 * dt;
            for j in 0..ns {
                values.push(self.value(t, s0 + j as f64 * ds));
            }
        }
        let mut f = SpaceTimeField::new(nt, ns, t0, s0, dt, ds, values)?;
        f.provenance = Provenance::AnalyticSampled {
            generator: self.name().to_string(),
        };
        Ok(f)
    }

    /// Default desk domain `t ∈ [0.5, 1.5]`, `s ∈ [-0.5, 1.5]` with `n × n` nodes.
    pub fn sample_default(&self, n: usize) -> Result<SpaceTimeField> {
        let m = n.max(2) - 1;
        self.sample(n, n, 0.5, -0.5, 1.0 / m as f64, 2.0 / m as f64)
    }
}
