use super::EntropyMap;
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};
use std::f64::consts::{FRAC_PI_2, PI};

/// Reduce an angle to `(-π, π]`.
#[inline]
pub(crate) fn wrap(theta: f64) -> f64 {
    let t = theta.rem_euclid(2.0 * PI);
    if t > PI {
        t - 2.0 * PI
    } else {
        t
    }
}

/// 2π-periodic generator with closed-form derivatives up to third order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum PeriodicGenerator {
    /// `φ(θ) = Σ_{m≥0} cos[m] cos(mθ) + Σ_{m≥1} sin[m-1] sin(mθ)`.
    Fourier { cos: Vec<f64>, sin: Vec<f64> },
    /// `cos(θ-θ0) 1_{|θ-θ0|<π/2}` convolved with a raised-cosine kernel of
    /// half-width `π/(4k)`.
    SmoothedElementary { theta0: f64, k: u32 },
}

/// Smooth entropy given by its generator.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Entropy {
    pub generator: PeriodicGenerator,
}

impl Entropy {
    pub fn from_fourier(cos: Vec<f64>, sin: Vec<f64>) -> Self {
        Entropy {
            generator: PeriodicGenerator::Fourier { cos, sin },
        }
    }

    /// `φ ≡ 1`, i.e. `Φ(z) = z`.
    pub fn identity() -> Self {
        Self::from_fourier(vec![1.0], vec![])
    }

    /// Fourier projection of degree `degree` of a periodic function, using
    /// `4·degree + 4` equispaced samples.
    pub fn project(f: impl Fn(f64) -> f64, degree: usize) -> Self {
        let n = 4 * degree + 4;
        let samples: Vec<f64> = (0..n).map(|k| f(2.0 * PI * k as f64 / n as f64)).collect();
        let mut cos = Vec::with_capacity(degree + 1);
        let mut sin = Vec::with_capacity(degree);
        for m in 0..=degree {
            let (mut a, mut b) = (0.0, 0.0);
            for (k, v) in samples.iter().enumerate() {
                let t = 2.0 * PI * (m * k) as f64 / n as f64;
                a += v * t.cos();
                b += v * t.sin();
            }
            let norm = if m == 0 { 1.0 } else { 2.0 } / n as f64;
            cos.push(a * norm);
            if m > 0 {
                sin.push(b * norm);
            }
        }
        Self::from_fourier(cos, sin)
    }

    /// Smooth approximation of the elementary entropy in direction `xi` at
    /// smoothing level `k ≥ 1`.
    pub fn approximate_elementary(xi: Vec2, k: u32) -> Self {
        Entropy {
            generator: PeriodicGenerator::SmoothedElementary {
                theta0: xi.angle(),
                k: k.max(1),
            },
        }
    }

    /// `[φ, φ', φ'', φ''']` at `θ`.
    pub fn derivatives(&self, theta: f64) -> [f64; 4] {
        match &self.generator {
            PeriodicGenerator::Fourier { cos, sin } => {
                let mut d = [0.0; 4];
                for (m, a) in cos.iter().enumerate() {
                    let mf = m as f64;
                    let (s, c) = (mf * theta).sin_cos();
                    d[0] += a * c;
                    d[1] -= a * mf * s;
                    d[2] -= a * mf * mf * c;
                    d[3] += a * mf * mf * mf * s;
                }
                for (m1, b) in sin.iter().enumerate() {
                    let mf = (m1 + 1) as f64;
                    let (s, c) = (mf * theta).sin_cos();
                    d[0] += b * s;
                    d[1] += b * mf * c;
                    d[2] -= b * mf * mf * s;
                    d[3] -= b * mf * mf * mf * c;
                }
                d
            }
            PeriodicGenerator::SmoothedElementary { theta0, k } => {
                smoothed_elementary(wrap(theta - theta0), FRAC_PI_2 / (2.0 * *k as f64))
            }
        }
    }

    /// `γ = φ + φ''`.
    pub fn gamma(&self, theta: f64) -> f64 {
        let d = self.derivatives(theta);
        d[0] + d[2]
    }

    /// `γ' = φ' + φ'''`.
    pub fn gamma_prime(&self, theta: f64) -> f64 {
        let d = self.derivatives(theta);
        d[1] + d[3]
    }

    /// `Φ(e^{iθ})`.
    pub fn eval_angle(&self, theta: f64) -> Vec2 {
        let d = self.derivatives(theta);
        let er = Vec2::from_angle(theta);
        er * d[0] + er.perp() * d[1]
    }

    /// `d/dθ Φ(e^{iθ})` by the product rule, without using `γ`:
    /// `φ' e_r + φ e_θ + φ'' e_θ - φ' e_r`.
    pub fn angular_derivative(&self, theta: f64) -> Vec2 {
        let d = self.derivatives(theta);
        let er = Vec2::from_angle(theta);
        let et = er.perp();
        er * d[1] + et * d[0] + et * d[2] - er * d[1]
    }
}

impl EntropyMap for Entropy {
    /// Evaluated at `z / |z|`.
    fn eval(&self, z: Vec2) -> Vec2 {
        self.eval_angle(z.angle())
    }
}

/// Raised-cosine kernel `(1 + cos(πτ/w)) / (2w)` on `|τ| < w` and its derivative.
#[inline]
fn kernel(tau: f64, w: f64) -> (f64, f64) {
    if tau.abs() >= w {
        (0.0, 0.0)
    } else {
        let a = PI / w;
        (
            (1.0 + (a * tau).cos()) / (2.0 * w),
            -a * (a * tau).sin() / (2.0 * w),
        )
    }
}

/// Closed-form convolution of `cos θ 1_{|θ|<π/2}` with the raised-cosine
/// kernel of half-width `w < π/2`; returns `[φ, φ', φ'', φ''']` at `θ ∈ (-π, π]`.
fn smoothed_elementary(theta: f64, w: f64) -> [f64; 4] {
    use num_complex::Complex64 as C;
    let a = PI / w;
    let lo = (-w).max(theta - FRAC_PI_2);
    let hi = w.min(theta + FRAC_PI_2);
    let g = if lo < hi {
        let i = C::i();
        // antiderivative in τ of e^{-iτ}(1 + cos aτ)
        let anti = |t: f64| {
            i * C::from_polar(1.0, -t)
                + 0.5
                    * (C::from_polar(1.0, (a - 1.0) * t) / (i * (a - 1.0))
                        - C::from_polar(1.0, -(a + 1.0) * t) / (i * (a + 1.0)))
        };
        C::from_polar(1.0, theta) * (anti(hi) - anti(lo)) / (2.0 * w)
    } else {
        C::new(0.0, 0.0)
    };
    let phi = g.re;
    let dphi = -g.im;
    let (r1, dr1) = kernel(wrap(theta - FRAC_PI_2), w);
    let (r2, dr2) = kernel(wrap(theta + FRAC_PI_2), w);
    [phi, dphi, -phi + r1 + r2, -dphi + dr1 + dr2]
}

/// `Φ^ξ(z) = ξ` if `z · ξ > 0`, else `0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ElementaryEntropy {
    pub xi: Vec2,
}

impl ElementaryEntropy {
    pub fn new(xi: Vec2) -> Self {
        ElementaryEntropy {
            xi: xi.normalized(),
        }
    }

    pub fn from_angle(theta0: f64) -> Self {
        ElementaryEntropy {
            xi: Vec2::from_angle(theta0),
        }
    }
}

impl EntropyMap for ElementaryEntropy {
    fn eval(&self, z: Vec2) -> Vec2 {
        if z.dot(self.xi) > 0.0 {
            self.xi
        } else {
            Vec2::ZERO
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: Vec2, b: Vec2, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn identity_entropy() {
        let e = Entropy::identity();
        for k in 0..16 {
            let t = k as f64 * 0.4 - 3.0;
            assert!(close(e.eval_angle(t), Vec2::from_angle(t), 1e-15));
            assert_eq!(e.gamma(t), 1.0);
        }
    }

    #[test]
    fn cosine_generator_is_constant_e1() {
        let e = Entropy::from_fourier(vec![0.0, 1.0], vec![]);
        for k in 0..16 {
            let t = 2.0 * PI * k as f64 / 16.0;
            // cos t e^{it} - sin t (e^{it})^⊥ = e1
            assert!(close(e.eval_angle(t), Vec2::E1, 1e-15));
            assert!(e.gamma(t).abs() < 1e-15);
        }
    }

    #[test]
    fn cos2_gamma() {
        let e = Entropy::from_fourier(vec![0.0, 0.0, 1.0], vec![]);
        for t in [0.0, 0.3, 1.7, -2.2] {
            assert!((e.gamma(t) + 3.0 * (2.0 * t).cos()).abs() < 1e-14);
        }
    }

    #[test]
    fn fourier_derivatives_match_finite_differences() {
        let e = Entropy::from_fourier(vec![0.3, -0.5, 0.2, 0.7], vec![0.1, -0.9, 0.4]);
        let hh = 1e-5;
        for t in [0.1, 1.3, -2.7] {
            let d = e.derivatives(t);
            for n in 0..3 {
                let fd = (e.derivatives(t + hh)[n] - e.derivatives(t - hh)[n]) / (2.0 * hh);
                assert!(
                    (fd - d[n + 1]).abs() < 1e-6,
                    "order {n}: {fd} vs {}",
                    d[n + 1]
                );
            }
        }
    }

    #[test]
    fn projection_recovers_a_trigonometric_polynomial() {
        let f = |t: f64| 0.5 + 0.25 * (3.0 * t).cos() - 0.75 * (2.0 * t).sin();
        let e = Entropy::project(f, 5);
        for t in [0.0, 0.7, 2.9] {
            assert!((e.derivatives(t)[0] - f(t)).abs() < 1e-13);
        }
    }

    #[test]
    fn smoothed_elementary_matches_numerical_convolution() {
        let k = 3;
        let w = PI / (4.0 * k as f64);
        let raw = |t: f64| {
            if wrap(t).abs() < FRAC_PI_2 {
                wrap(t).cos()
            } else {
                0.0
            }
        };
        let n = 20_000;
        for t in [0.0, 0.4, 1.5, 1.6, -1.55, 2.5, 3.1] {
            let dt = 2.0 * w / n as f64;
            let num: f64 = (0..n)
                .map(|m| {
                    let tau = -w + (m as f64 + 0.5) * dt;
                    raw(t - tau) * kernel(tau, w).0 * dt
                })
                .sum();
            let d = smoothed_elementary(t, w);
            assert!((d[0] - num).abs() < 1e-7, "t = {t}: {} vs {num}", d[0]);
        }
    }

    #[test]
    fn smoothed_elementary_derivatives_are_consistent() {
        let e = Entropy::approximate_elementary(Vec2::from_angle(0.6), 2);
        let hh = 1e-5;
        for t in [0.1, 0.6, 2.0, 2.2, -1.0, -0.9, 3.0] {
            let d = e.derivatives(t);
            for n in 0..3 {
                let fd = (e.derivatives(t + hh)[n] - e.derivatives(t - hh)[n]) / (2.0 * hh);
                assert!(
                    (fd - d[n + 1]).abs() < 1e-4,
                    "t {t} order {n}: {fd} vs {}",
                    d[n + 1]
                );
            }
        }
    }

    #[test]
    fn smoothed_elementary_limits() {
        let xi = Vec2::from_angle(-0.8);
        let mut last = 0.0;
        for k in [1, 2, 4, 8, 16, 32] {
            let e = Entropy::approximate_elementary(xi, k);
            let at = e.derivatives(-0.8)[0];
            assert!(at > last && at <= 1.0);
            last = at;
            let sup = (0..2000)
                .map(|m| {
                    let d = e.derivatives(2.0 * PI * m as f64 / 2000.0);
                    d[0].abs().max(d[1].abs())
                })
                .fold(0.0, f64::max);
            assert!(sup <= 1.0 + 1e-12, "k = {k}: {sup}");
        }
        assert!(1.0 - last < 1e-3);
        let e = Entropy::approximate_elementary(xi, 64);
        assert!(close(e.eval(xi), xi, 1e-4));
        assert!(close(e.eval(-xi), Vec2::ZERO, 1e-12));
    }

    #[test]
    fn elementary_entropy_ties_map_to_zero() {
        let e = ElementaryEntropy::new(Vec2::E1);
        assert_eq!(e.eval(Vec2::E2), Vec2::ZERO);
        assert_eq!(e.eval(Vec2::new(0.1, 1.0)), Vec2::E1);
    }
}
