//! Kinetic indicators `χ(x, ξ) = 1_{u(x)·ξ > 0}`, the averaging
//! reconstruction `u = ½ ∫_{S¹} ξ χ(·, ξ) dξ` and the weak transport
//! residual `ξ · ∇χ(·, ξ)`.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fields::quadrature::{check_support, pair_divergence};
use crate::fields::{GridField2, GridSpec, TestBump, TestFunction};
use crate::geometry::Vec2;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `χ(·, ξ)` sampled on the nodes of a grid.
#[derive(Clone, Debug, PartialEq)]
pub struct KineticSlice {
    pub xi: Vec2,
    pub spec: GridSpec,
    pub indicator: Vec<bool>,
}

/// Strict inequality: ties `u · ξ = 0` map to `0`.
pub fn chi(u: &GridField2, xi: Vec2) -> KineticSlice {
    KineticSlice {
        xi,
        spec: u.spec,
        indicator: u.values.iter().map(|v| v.dot(xi) > 0.0).collect(),
    }
}

impl KineticSlice {
    pub fn count(&self) -> usize {
        self.indicator.iter().filter(|&&b| b).count()
    }
}

/// Equispaced directions `ξ_j = e^{i(2πj/N + offset)}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DirectionFan {
    pub n: usize,
    pub offset: f64,
}

impl DirectionFan {
    /// Offset `π/N`, which keeps every direction off the coordinate axes
    /// whenever `N` is a multiple of 4.
    pub fn new(n: usize) -> Result<Self> {
        Self::with_offset(n, PI / n.max(1) as f64)
    }

    pub fn with_offset(n: usize, offset: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(
                "direction fan needs at least one direction".into(),
            ));
        }
        Ok(DirectionFan { n, offset })
    }

    pub fn direction(&self, j: usize) -> Vec2 {
        Vec2::from_angle(2.0 * PI * j as f64 / self.n as f64 + self.offset)
    }

    pub fn directions(&self) -> Vec<Vec2> {
        (0..self.n).map(|j| self.direction(j)).collect()
    }

    /// Arc length carried by each direction.
    pub fn weight(&self) -> f64 {
        2.0 * PI / self.n as f64
    }
}

impl Default for DirectionFan {
    fn default() -> Self {
        DirectionFan::new(64).expect("positive fan size")
    }
}

/// Suggested fan size `√(nx ny) / 4`, at least 4.
pub fn suggested_fan_size(spec: &GridSpec) -> usize {
    (((spec.nx * spec.ny) as f64).sqrt() / 4.0).round().max(4.0) as usize
}

/// `ũ(x) = ½ Σ_j ξ_j χ(x, ξ_j) (2π/N)`.
pub fn average_reconstruct(u: &GridField2, fan: &DirectionFan) -> GridField2 {
    let dirs = fan.directions();
    let w = 0.5 * fan.weight();
    let values = u
        .values
        .par_iter()
        .map(|v| {
            let mut acc = Vec2::ZERO;
            for xi in &dirs {
                if v.dot(*xi) > 0.0 {
                    acc += *xi;
                }
            }
            acc * w
        })
        .collect();
    GridField2 {
        spec: u.spec,
        values,
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReconstructionReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub max_error: f64,
    pub l2_error: f64,
}

/// Max and root-mean-square node error of the averaging reconstruction.
pub fn reconstruction_error(u: &GridField2, fan: &DirectionFan) -> ReconstructionReport {
    let r = average_reconstruct(u, fan);
    let (mut max, mut sq) = (0.0f64, 0.0);
    for (a, b) in r.values.iter().zip(&u.values) {
        let e = (*a - *b).norm();
        max = max.max(e);
        sq += e * e;
    }
    ReconstructionReport {
        n: fan.n,
        max_error: max,
        l2_error: (sq / u.values.len() as f64).sqrt(),
    }
}

/// `-∫ χ(x, ξ) ξ · ∇ζ(x) dx`.
pub fn kinetic_residual(
    u: &GridField2,
    xi: Vec2,
    zeta: &TestBump,
    tol: &Tolerances,
) -> Result<f64> {
    check_support(&u.spec, zeta.bbox(), tol.support_margin * u.spec.h)?;
    let slice = chi(u, xi);
    Ok(pair_divergence(&u.spec, zeta, |k| {
        if slice.indicator[k] {
            xi
        } else {
            Vec2::ZERO
        }
    }))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KineticReport {
    pub xi: Vec2,
    pub zeta: TestBump,
    pub h: f64,
    pub residual: f64,
}

/// Residuals for every direction of the fan, in fan order.
pub fn fan_residuals(
    u: &GridField2,
    fan: &DirectionFan,
    zeta: &TestBump,
    tol: &Tolerances,
) -> Result<Vec<KineticReport>> {
    check_support(&u.spec, zeta.bbox(), tol.support_margin * u.spec.h)?;
    (0..fan.n)
        .into_par_iter()
        .map(|j| {
            let xi = fan.direction(j);
            Ok(KineticReport {
                xi,
                zeta: *zeta,
                h: u.spec.h,
                residual: kinetic_residual(u, xi, zeta, tol)?,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::entropy::{entropy_production, ElementaryEntropy, EntropyMap};
    use crate::fields::{generate, Generator};

    fn grid(n: usize) -> GridSpec {
        GridSpec::centered(n, n, 2.0 / n as f64, Vec2::ZERO).unwrap()
    }

    #[test]
    fn constant_field_indicators() {
        let u = generate(&Generator::constant(Vec2::E1), grid(16)).unwrap();
        assert_eq!(chi(&u, Vec2::E1).count(), u.values.len());
        assert_eq!(chi(&u, Vec2::E2).count(), 0);
    }

    #[test]
    fn vortex_indicator_is_a_half_plane() {
        let u = generate(&Generator::vortex(Vec2::ZERO, 1.0), grid(32)).unwrap();
        let s = chi(&u, Vec2::E1);
        for (k, &b) in s.indicator.iter().enumerate() {
            let p = u.spec.node_at(k);
            assert_eq!(b, p.perp().dot(Vec2::E1) > 0.0);
        }
    }

    #[test]
    fn four_direction_reconstruction() {
        let u = generate(&Generator::constant(Vec2::E1), grid(4)).unwrap();
        let fan = DirectionFan::with_offset(4, PI / 4.0).unwrap();
        let r = average_reconstruct(&u, &fan);
        let expect = PI / (2.0 * 2f64.sqrt());
        for v in &r.values {
            assert!((v.x - expect).abs() < 1e-14 && v.y.abs() < 1e-14);
        }
    }

    #[test]
    fn chi_matches_elementary_entropy_exactly() {
        let u = generate(&Generator::vortex(Vec2::new(0.03, -0.01), -1.0), grid(24)).unwrap();
        let fan = DirectionFan::new(16).unwrap();
        for xi in fan.directions() {
            let s = chi(&u, xi);
            let e = ElementaryEntropy { xi };
            for (k, v) in u.values.iter().enumerate() {
                let lhs = if s.indicator[k] { xi } else { Vec2::ZERO };
                assert_eq!(lhs, e.eval(*v));
            }
        }
    }

    #[test]
    fn residual_equals_elementary_entropy_production() {
        let u = generate(&Generator::vortex(Vec2::ZERO, 1.0), grid(64)).unwrap();
        let z = TestBump::new(Vec2::new(0.3, 0.2), 0.4);
        let tol = Tolerances::default();
        for xi in DirectionFan::new(8).unwrap().directions() {
            let a = kinetic_residual(&u, xi, &z, &tol).unwrap();
            let b = entropy_production(&ElementaryEntropy { xi }, &u, &z, &tol).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn fan_is_offset_from_axes() {
        let fan = DirectionFan::default();
        for xi in fan.directions() {
            assert!(xi.x.abs() > 1e-3 && xi.y.abs() > 1e-3);
        }
        assert!(DirectionFan::new(0).is_err());
    }
}
