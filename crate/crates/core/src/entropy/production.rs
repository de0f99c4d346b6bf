use super::{EntropyMap, ExtendedEntropy};
use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fields::quadrature::{check_support, pair_divergence, pair_value};
use crate::fields::{GridField2, TestBump, TestFunction};
use crate::geometry::Vec2;
use crate::regularity::MollifiedField;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// `-∫ Φ(u) · ∇ζ`, the entropy production of `Φ` tested against `ζ`.
pub fn entropy_production<E: EntropyMap + ?Sized>(
    phi: &E,
    u: &GridField2,
    zeta: &TestBump,
    tol: &Tolerances,
) -> Result<f64> {
    check_support(&u.spec, zeta.bbox(), tol.support_margin * u.spec.h)?;
    let composed: Vec<Vec2> = u.values.par_iter().map(|&v| phi.eval(v)).collect();
    Ok(pair_divergence(&u.spec, zeta, |k| composed[k]))
}

/// The three integrals of the regularized production identity
/// `∫ζ ∇·Φ̃(u_ε) = I_ε - II_ε` with `D = 1 - |u_ε|²`:
/// `I_ε = ∫ζ ∇·[Ψ(u_ε) D]`, `II_ε = ∫ζ D ∇·[Ψ(u_ε)]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProductionDecomposition {
    pub eps: f64,
    pub h: f64,
    #[serde(rename = "I")]
    pub i_eps: f64,
    #[serde(rename = "II")]
    pub ii_eps: f64,
    pub total: f64,
}

impl ProductionDecomposition {
    /// `total - (I - II)`.
    pub fn residual(&self) -> f64 {
        self.total - (self.i_eps - self.ii_eps)
    }
}

pub fn production_decomposition(
    phi: &ExtendedEntropy,
    u: &GridField2,
    eps: f64,
    zeta: &TestBump,
    tol: &Tolerances,
) -> Result<ProductionDecomposition> {
    let m = MollifiedField::compute(u, eps)?;
    check_support(&m.spec, zeta.bbox(), tol.support_margin * u.spec.h).map_err(|e| match e {
        Error::SupportOverflow(msg) => {
            Error::SupportOverflow(format!("outside the eps-interior: {msg}"))
        }
        other => other,
    })?;
    let nodes: Vec<(Vec2, Vec2, f64)> = (0..m.values.len())
        .into_par_iter()
        .map(|k| {
            let v = m.values[k];
            let d = m.mean_square[k] - v.norm_sq();
            let dpsi = phi.psi_jacobian(v);
            let du = &m.jacobian[k];
            // ∇·[Ψ(u_ε)] = Tr(DΨ(u_ε) Du_ε)
            let mut div = 0.0;
            for a in 0..2 {
                for b in 0..2 {
                    div += dpsi[a][b] * du[b][a];
                }
            }
            (phi.eval(v), phi.psi(v) * d, d * div)
        })
        .collect();
    let total = pair_divergence(&m.spec, zeta, |k| nodes[k].0);
    let i_eps = pair_divergence(&m.spec, zeta, |k| nodes[k].1);
    let ii_eps = pair_value(&m.spec, zeta, |k| nodes[k].2);
    Ok(ProductionDecomposition {
        eps,
        h: u.spec.h,
        i_eps,
        ii_eps,
        total,
    })
}
