use crate::error::{Error, Result};
use crate::geometry::Vec2;
use std::sync::OnceLock;

/// Unnormalised profile `exp(-1/(1-q))` in the squared radius `q`.
#[inline]
fn profile(q: f64) -> f64 {
    if q >= 1.0 {
        0.0
    } else {
        (-1.0 / (1.0 - q)).exp()
    }
}

/// `d/dq exp(-1/(1-q))`.
#[inline]
fn profile_dq(q: f64) -> f64 {
    if q >= 1.0 {
        0.0
    } else {
        let a = 1.0 - q;
        -profile(q) / (a * a)
    }
}

/// Midpoint sub-cells per grid cell and dimension in stencil weights.
const SUB: usize = 8;

fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let n = n + n % 2;
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for k in 1..n {
        s += f(a + k as f64 * h) * if k % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

/// Normalising constants of the 2-D and 1-D profiles.
fn constants() -> &'static (f64, f64, f64, f64) {
    static C: OnceLock<(f64, f64, f64, f64)> = OnceLock::new();
    C.get_or_init(|| {
        // ∫_{B1} exp(-1/(1-|x|^2)) dx = π ∫_0^1 exp(-1/t) dt
        let mass2 = std::f64::consts::PI
            * simpson(
                |t| if t > 0.0 { (-1.0 / t).exp() } else { 0.0 },
                0.0,
                1.0,
                200_000,
            );
        let mass1 = simpson(|x| profile(x * x), -1.0, 1.0, 200_000);
        let c2 = 1.0 / mass2;
        let c1 = 1.0 / mass1;
        // sup of |d/dr profile(r^2)| = sup 2r |profile_dq(r^2)|
        let grad_max = |c: f64| {
            (1..100_000)
                .map(|k| {
                    let r = k as f64 / 100_000.0;
                    2.0 * r * profile_dq(r * r).abs()
                })
                .fold(0.0, f64::max)
                * c
        };
        (c2, c1, grad_max(c2), grad_max(c1))
    })
}

/// Discrete convolution weights `h² ρ_ε(m h)` renormalised to unit sum,
/// with the matching gradient weights.
#[derive(Clone, Debug)]
pub struct Stencil2d {
    pub offsets: Vec<(isize, isize)>,
    pub weights: Vec<f64>,
    pub grad_weights: Vec<Vec2>,
    /// Raw quadrature of `∫ρ_ε` before renormalisation.
    pub raw_mass: f64,
    /// Largest `|m|` in the stencil, in nodes.
    pub reach: usize,
}

/// Standard 2-D mollifier `ρ_ε(x) = ε⁻² ρ(x/ε)`, `ρ = C exp(-1/(1-|x|²))` on the unit disc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mollifier {
    pub eps: f64,
}

impl Mollifier {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0 && eps.is_finite()) {
            return Err(Error::InvalidParameter(format!(
                "mollifier radius must be positive, got {eps}"
            )));
        }
        Ok(Mollifier { eps })
    }

    /// Errors unless `eps ≥ 2h`.
    pub fn resolvable(eps: f64, h: f64) -> Result<Self> {
        if eps < 2.0 * h * (1.0 - 1e-12) {
            return Err(Error::UnresolvableMollifier { eps, min: 2.0 * h });
        }
        Self::new(eps)
    }

    pub fn normalization() -> f64 {
        constants().0
    }

    pub fn density(&self, z: Vec2) -> f64 {
        let e2 = self.eps * self.eps;
        constants().0 / e2 * profile(z.norm_sq() / e2)
    }

    pub fn gradient(&self, z: Vec2) -> Vec2 {
        let e2 = self.eps * self.eps;
        // ∇ ρ(|z|²/ε²)/ε² = ρ'(q) 2z / ε⁴
        z * (constants().0 * profile_dq(z.norm_sq() / e2) * 2.0 / (e2 * e2))
    }

    /// `‖ρ_ε‖_∞ = C e⁻¹ / ε²`.
    pub fn sup(&self) -> f64 {
        constants().0 * (-1.0f64).exp() / (self.eps * self.eps)
    }

    /// `‖∇ρ‖_∞` of the unit-scale profile.
    pub fn unit_gradient_sup() -> f64 {
        constants().2
    }

    /// Cell-integrated weights: offset `m` carries `∫ ρ_ε` over the cell of
    /// side `h` centred at `m h`, by `SUB × SUB` midpoint sub-cells.
    pub fn stencil(&self, h: f64) -> Stencil2d {
        let reach = (self.eps / h + 0.5).ceil() as isize;
        let sub = h / SUB as f64;
        let mut offsets = Vec::new();
        let mut weights = Vec::new();
        let mut grads = Vec::new();
        for dj in -reach..=reach {
            for di in -reach..=reach {
                let (mut w, mut g) = (0.0, Vec2::ZERO);
                for b in 0..SUB {
                    for a in 0..SUB {
                        let z = Vec2::new(
                            (di as f64 - 0.5) * h + (a as f64 + 0.5) * sub,
                            (dj as f64 - 0.5) * h + (b as f64 + 0.5) * sub,
                        );
                        w += self.density(z);
                        g += self.gradient(z);
                    }
                }
                if w > 0.0 {
                    offsets.push((di, dj));
                    weights.push(w * sub * sub);
                    grads.push(g * (sub * sub));
                }
            }
        }
        let raw_mass: f64 = weights.iter().sum();
        for w in &mut weights {
            *w /= raw_mass;
        }
        for g in &mut grads {
            *g = *g * (1.0 / raw_mass);
        }
        Stencil2d {
            offsets,
            weights,
            grad_weights: grads,
            raw_mass,
            reach: reach as usize,
        }
    }
}

/// 1-D mollifier `ρ_ε(s) = ε⁻¹ ρ(s/ε)`, `ρ = C exp(-1/(1-s²))` on `(-1, 1)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mollifier1d {
    pub eps: f64,
}

#[derive(Clone, Debug)]
pub struct Stencil1d {
    pub offsets: Vec<isize>,
    pub weights: Vec<f64>,
    pub grad_weights: Vec<f64>,
    pub raw_mass: f64,
    pub reach: usize,
}

impl Mollifier1d {
    pub fn resolvable(eps: f64, ds: f64) -> Result<Self> {
        if eps < 2.0 * ds * (1.0 - 1e-12) {
            return Err(Error::UnresolvableMollifier { eps, min: 2.0 * ds });
        }
        Ok(Mollifier1d { eps })
    }

    pub fn density(&self, s: f64) -> f64 {
        constants().1 / self.eps * profile((s / self.eps).powi(2))
    }

    pub fn derivative(&self, s: f64) -> f64 {
        let e = self.eps;
        constants().1 * profile_dq((s / e).powi(2)) * 2.0 * s / (e * e * e)
    }

    /// `‖ρ‖_∞` of the unit-scale profile.
    pub fn unit_sup() -> f64 {
        constants().1 * (-1.0f64).exp()
    }

    /// `‖ρ'‖_∞` of the unit-scale profile.
    pub fn unit_derivative_sup() -> f64 {
        constants().3
    }

    /// Cell-integrated weights, as in the 2-D stencil.
    pub fn stencil(&self, ds: f64) -> Stencil1d {
        let reach = (self.eps / ds + 0.5).ceil() as isize;
        let sub = ds / SUB as f64;
        let mut offsets = Vec::new();
        let mut weights = Vec::new();
        let mut grads = Vec::new();
        for m in -reach..=reach {
            let (mut w, mut g) = (0.0, 0.0);
            for a in 0..SUB {
                let s = (m as f64 - 0.5) * ds + (a as f64 + 0.5) * sub;
                w += self.density(s);
                g += self.derivative(s);
            }
            if w > 0.0 {
                offsets.push(m);
                weights.push(w * sub);
                grads.push(g * sub);
            }
        }
        let raw_mass: f64 = weights.iter().sum();
        weights.iter_mut().for_each(|w| *w /= raw_mass);
        grads.iter_mut().for_each(|g| *g /= raw_mass);
        Stencil1d {
            offsets,
            weights,
            grad_weights: grads,
            raw_mass,
            reach: reach as usize,
        }
    }
}
