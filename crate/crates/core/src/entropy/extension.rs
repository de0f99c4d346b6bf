use super::{Entropy, EntropyMap};
use crate::geometry::{outer, Mat2, Vec2};
use serde::{Deserialize, Serialize};

/// Radial cutoff `η` with `η = 0` on `[0, 1/2] ∪ [2, ∞)`, `η = 1` on
/// `[3/4, 3/2]`, quintic smoothstep transitions. Returns `(η, η', η'')`.
pub fn cutoff(r: f64) -> (f64, f64, f64) {
    let s = |t: f64| t * t * t * (10.0 + t * (-15.0 + 6.0 * t));
    let ds = |t: f64| 30.0 * t * t * (t - 1.0) * (t - 1.0);
    let dds = |t: f64| 60.0 * t * (t - 1.0) * (2.0 * t - 1.0);
    if r <= 0.5 || r >= 2.0 {
        (0.0, 0.0, 0.0)
    } else if r < 0.75 {
        let t = 4.0 * r - 2.0;
        (s(t), 4.0 * ds(t), 16.0 * dds(t))
    } else if r <= 1.5 {
        (1.0, 0.0, 0.0)
    } else {
        let t = 4.0 - 2.0 * r;
        (s(t), -2.0 * ds(t), 4.0 * dds(t))
    }
}

/// Extension `Φ̃(z) = η(|z|) Φ(z/|z|)` of an entropy to the plane, with the
/// splitting `DΦ̃(z) = -2Ψ(z) ⊗ z + γ̃(z) Id`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExtendedEntropy {
    pub base: Entropy,
}

/// Radii below which `Ψ` and `γ̃` are set to zero (`η` vanishes there).
const GUARD: f64 = 0.5;

impl ExtendedEntropy {
    pub fn new(base: Entropy) -> Self {
        ExtendedEntropy { base }
    }

    /// `DΦ̃(z) = η' Φ ⊗ e_r + (ηγ/r) e_θ ⊗ e_θ`.
    pub fn jacobian(&self, z: Vec2) -> Mat2 {
        let r = z.norm();
        if r <= GUARD {
            return [[0.0; 2]; 2];
        }
        let theta = z.angle();
        let (eta, deta, _) = cutoff(r);
        let er = z * (1.0 / r);
        let et = er.perp();
        let phi = self.base.eval_angle(theta);
        let g = self.base.gamma(theta);
        let a = outer(phi * deta, er);
        let b = outer(et * (eta * g / r), et);
        [
            [a[0][0] + b[0][0], a[0][1] + b[0][1]],
            [a[1][0] + b[1][0], a[1][1] + b[1][1]],
        ]
    }

    /// `γ̃(z) = z^⊥ · DΦ̃(z) z^⊥ / |z|²`.
    pub fn gamma(&self, z: Vec2) -> f64 {
        let r2 = z.norm_sq();
        if r2 <= GUARD * GUARD {
            return 0.0;
        }
        let zp = z.perp();
        zp.dot(crate::geometry::mat_vec(&self.jacobian(z), zp)) / r2
    }

    /// `Ψ(z) = (-DΦ̃(z) z + γ̃(z) z) / (2|z|²)`.
    pub fn psi(&self, z: Vec2) -> Vec2 {
        let r2 = z.norm_sq();
        if r2 <= GUARD * GUARD {
            return Vec2::ZERO;
        }
        let dz = crate::geometry::mat_vec(&self.jacobian(z), z);
        (z * self.gamma(z) - dz) * (0.5 / r2)
    }

    /// `DΨ(z)` in closed form from `Ψ = a(r) Φ(θ) + b(r) γ(θ) e_r` with
    /// `a = -η'/(2r)` and `b = η/(2r²)`.
    pub fn psi_jacobian(&self, z: Vec2) -> Mat2 {
        let r = z.norm();
        if r <= GUARD {
            return [[0.0; 2]; 2];
        }
        let theta = z.angle();
        let (eta, deta, ddeta) = cutoff(r);
        let er = z * (1.0 / r);
        let et = er.perp();
        let phi = self.base.eval_angle(theta);
        let g = self.base.gamma(theta);
        let dg = self.base.gamma_prime(theta);
        let a = -deta / (2.0 * r);
        let b = eta / (2.0 * r * r);
        let da = -ddeta / (2.0 * r) + deta / (2.0 * r * r);
        let db = deta / (2.0 * r * r) - eta / (r * r * r);
        let d_r = phi * da + er * (db * g);
        let d_theta = et * (a * g) + (er * dg + et * g) * b;
        let m1 = outer(d_r, er);
        let m2 = outer(d_theta * (1.0 / r), et);
        [
            [m1[0][0] + m2[0][0], m1[0][1] + m2[0][1]],
            [m1[1][0] + m2[1][0], m1[1][1] + m2[1][1]],
        ]
    }

    /// `∇·Ψ(z)`.
    pub fn psi_divergence(&self, z: Vec2) -> f64 {
        let m = self.psi_jacobian(z);
        m[0][0] + m[1][1]
    }
}

impl EntropyMap for ExtendedEntropy {
    fn eval(&self, z: Vec2) -> Vec2 {
        let r = z.norm();
        if r <= GUARD || r >= 2.0 {
            return Vec2::ZERO;
        }
        self.base.eval_angle(z.angle()) * cutoff(r).0
    }
}
