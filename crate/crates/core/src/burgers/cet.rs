use super::residuals::check_support;
use super::{SpaceTimeBump, SpaceTimeField};
use crate::error::{Error, Result};
use crate::regularity::Mollifier1d;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// Space-only commutator quantities on the support of `ζ`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CetSpacetimeReport {
    pub eps: f64,
    pub dt: f64,
    pub ds: f64,
    /// `Σ_t Σ_s Σ_{0<|σ|≤ε} |v(t,s-σ) - v(t,s)|³ / σ² dt ds dσ`.
    pub tail: f64,
    /// `ε⁻² Σ_t Σ_s Σ_{σ in the stencil} |v(t,s-σ) - v(t,s)|³ dt ds dσ`.
    pub scaled: f64,
    /// `∫∫ (v_ε)_s ζ (v_ε² - v² ⋆ ρ_ε)`.
    pub i_eps: f64,
    /// `C` in `|I_ε| ≤ C · scaled`.
    pub constant: f64,
    pub bound_holds: bool,
}

/// `C = 4 ‖ρ'‖_∞ ‖ρ‖_∞ ‖ζ‖_∞` for the unit-scale 1-D profile.
///
/// Pointwise, `|(v_ε)_s| ≤ ‖ρ'‖ ε⁻² Σ|Δv| dσ` and
/// `v² ⋆ ρ_ε - v_ε² ≤ ‖ρ‖ ε⁻¹ Σ|Δv|² dσ`; Hölder over the `N ≤ 2(ε + 3ds/2)/ds`
/// stencil offsets bounds the product by `2 (1 + 3ds/(2ε)) ‖ρ'‖ ‖ρ‖ ε⁻² Σ|Δv|³ dσ`,
/// and `1 + 3ds/(2ε) ≤ 2` for `ε ≥ 2 ds`.
pub fn cet_constant(zeta: &SpaceTimeBump) -> f64 {
    4.0 * Mollifier1d::unit_derivative_sup() * Mollifier1d::unit_sup() * zeta.sup()
}

/// Mollifies every time slice in `s` with `ρ_ε` and compares `I_ε` with
/// the local cubic difference sums over the support of `ζ`.
pub fn cet_spacetime(
    v: &SpaceTimeField,
    eps: f64,
    zeta: &SpaceTimeBump,
) -> Result<CetSpacetimeReport> {
    let moll = Mollifier1d::resolvable(eps, v.ds)?;
    check_support(v, zeta)?;
    let st = moll.stencil(v.ds);
    let reach = st.reach;
    let ((tl, sl), (th, sh)) = zeta.bbox();
    let j_lo = ((sl - v.s0) / v.ds).floor().max(0.0) as usize;
    let j_hi = (((sh - v.s0) / v.ds).ceil() as usize).min(v.ns - 1);
    if j_lo < reach || j_hi + reach >= v.ns {
        return Err(Error::SupportOverflow(format!(
            "s-support [{sl}, {sh}] must stay {eps} inside [{}, {}]",
            v.s0,
            v.s_max()
        )));
    }
    let i_lo = ((tl - v.t0) / v.dt).floor().max(0.0) as usize;
    let i_hi = (((th - v.t0) / v.dt).ceil() as usize).min(v.nt - 1);
    let cut = (eps / v.ds + 1e-9).floor() as usize;
    let rows: Vec<(f64, f64, f64)> = (i_lo..=i_hi)
        .into_par_iter()
        .map(|i| {
            let row = v.slice(i);
            let t = v.t(i);
            let (mut tail, mut scaled, mut ie) = (0.0, 0.0, 0.0);
            for j in j_lo..=j_hi {
                let c = row[j];
                let (mut ve, mut sq, mut dv) = (0.0, 0.0, 0.0);
                for ((&m, &w), &g) in st.offsets.iter().zip(&st.weights).zip(&st.grad_weights) {
                    let y = row[(j as isize - m) as usize];
                    ve += w * y;
                    sq += w * y * y;
                    dv += g * (y - c);
                }
                ie += dv * zeta.value(t, v.s(j)) * (ve * ve - sq);
                for m in 1..=reach {
                    let d3 = (row[j - m] - c).abs().powi(3) + (row[j + m] - c).abs().powi(3);
                    scaled += d3;
                    if m <= cut {
                        let sigma = m as f64 * v.ds;
                        tail += d3 / (sigma * sigma);
                    }
                }
            }
            (tail, scaled, ie)
        })
        .collect();
    let w = v.dt * v.ds;
    let (mut tail, mut scaled, mut i_eps) = (0.0, 0.0, 0.0);
    for (a, b, c) in rows {
        tail += a;
        scaled += b;
        i_eps += c;
    }
    let tail = tail * w * v.ds;
    let scaled = scaled * w * v.ds / (eps * eps);
    let i_eps = i_eps * w;
    let constant = cet_constant(zeta);
    Ok(CetSpacetimeReport {
        eps,
        dt: v.dt,
        ds: v.ds,
        tail,
        scaled,
        i_eps,
        constant,
        bound_holds: i_eps.abs() <= constant * scaled * (1.0 + 1e-12) + 1e-300,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::burgers::BurgersGenerator;

    fn window() -> SpaceTimeBump {
        SpaceTimeBump::Plateau {
            t_lo: 0.6,
            t_hi: 1.4,
            s_lo: 0.0,
            s_hi: 1.0,
            ramp: 0.1,
        }
    }

    #[test]
    fn constant_field_gives_zero() {
        let v = BurgersGenerator::Constant { c: -0.4 }
            .sample_default(129)
            .unwrap();
        let r = cet_spacetime(&v, 4.0 * v.ds, &window()).unwrap();
        assert_eq!(r.tail, 0.0);
        assert!(r.i_eps.abs() < 1e-14 && r.bound_holds);
    }

    #[test]
    fn rarefaction_decays_and_shock_does_not() {
        let rare = BurgersGenerator::Rarefaction {
            vl: 0.0,
            vr: 1.0,
            s_star: 0.0,
        }
        .sample_default(257)
        .unwrap();
        let shock = BurgersGenerator::Shock {
            vl: 1.0,
            vr: 0.0,
            s_star: 0.0,
        }
        .sample_default(257)
        .unwrap();
        let ds = rare.ds;
        let r8 = cet_spacetime(&rare, 8.0 * ds, &window()).unwrap();
        let r2 = cet_spacetime(&rare, 2.0 * ds, &window()).unwrap();
        assert!(r2.tail < r8.tail / 4.0);
        let s8 = cet_spacetime(&shock, 8.0 * ds, &window()).unwrap();
        let s2 = cet_spacetime(&shock, 2.0 * ds, &window()).unwrap();
        assert!(s2.scaled > 0.5 * s8.scaled && s2.tail > 0.4 * s8.tail);
        for r in [r8, r2, s8, s2] {
            assert!(r.bound_holds, "{r:?}");
        }
    }

    #[test]
    fn unresolvable_eps_is_rejected() {
        let v = BurgersGenerator::Constant { c: 0.0 }
            .sample_default(33)
            .unwrap();
        assert!(cet_spacetime(&v, v.ds, &window()).is_err());
    }
}
