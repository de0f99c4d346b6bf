use super::bump::{TestBump, TestFunction};
use super::quadrature::{check_support, pair_divergence};
use super::{GridField2, GridScalar};
use crate::config::Tolerances;
use crate::error::Result;
use crate::geometry::Vec2;

/// `-∫ u · ∇ζ`, the distributional divergence of `u` tested against `ζ`.
///
/// The support of `ζ` must stay `support_margin · h` away from the boundary.
pub fn divergence_weak(u: &GridField2, zeta: &TestBump, tol: &Tolerances) -> Result<f64> {
    check_support(&u.spec, zeta.bbox(), tol.support_margin * u.spec.h)?;
    Ok(pair_divergence(&u.spec, zeta, |k| u.values[k]))
}

/// `∇^⊥ψ = (-∂₂ψ, ∂₁ψ)` by centred differences inside and one-sided
/// differences on the boundary.
pub fn gradient_from_stream(psi: &GridScalar) -> GridField2 {
    let spec = psi.spec;
    let h = spec.h;
    let d = |lo: f64, hi: f64, span: f64| (hi - lo) / (span * h);
    let mut values = Vec::with_capacity(spec.len());
    for j in 0..spec.ny {
        for i in 0..spec.nx {
            let dx = if i == 0 {
                d(psi.at(0, j), psi.at(1, j), 1.0)
            } else if i == spec.nx - 1 {
                d(psi.at(i - 1, j), psi.at(i, j), 1.0)
            } else {
                d(psi.at(i - 1, j), psi.at(i + 1, j), 2.0)
            };
            let dy = if j == 0 {
                d(psi.at(i, 0), psi.at(i, 1), 1.0)
            } else if j == spec.ny - 1 {
                d(psi.at(i, j - 1), psi.at(i, j), 1.0)
            } else {
                d(psi.at(i, j - 1), psi.at(i, j + 1), 2.0)
            };
            values.push(Vec2::new(-dy, dx));
        }
    }
    GridField2 { spec, values }
}

/// Copy of `u` with the sign flipped wherever `(x - point) · normal > 0`.
pub fn negate_half_plane(u: &GridField2, point: Vec2, normal: Vec2) -> GridField2 {
    let mut out = u.clone();
    for (k, v) in out.values.iter_mut().enumerate() {
        if (u.spec.node_at(k) - point).dot(normal) > 0.0 {
            *v = -*v;
        }
    }
    out
}
