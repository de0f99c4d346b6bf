use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

/// Smooth compactly supported test function used in weak pairings.
pub trait TestFunction {
    fn value(&self, p: Vec2) -> f64;
    fn gradient(&self, p: Vec2) -> Vec2;
    /// Closed bounding box of the support.
    fn bbox(&self) -> (Vec2, Vec2);
}

/// `ζ(x) = A exp(-1 / (1 - |x - c|² / r²))` inside the ball of radius `r`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestBump {
    pub center: Vec2,
    pub radius: f64,
    pub amplitude: f64,
}

impl TestBump {
    pub fn new(center: Vec2, radius: f64) -> Self {
        TestBump {
            center,
            radius,
            amplitude: 1.0,
        }
    }

    pub fn with_amplitude(mut self, amplitude: f64) -> Self {
        self.amplitude = amplitude;
        self
    }

    /// `∫ ζ(p + t d) dt` along the line through `p` with direction `d`.
    pub fn line_integral(&self, p: Vec2, d: Vec2) -> f64 {
        let d = d.normalized();
        // chord of the support ball: |p - c + t d|^2 < r^2
        let w = p - self.center;
        let b = w.dot(d);
        let disc = b * b - (w.norm_sq() - self.radius * self.radius);
        if disc <= 0.0 {
            return 0.0;
        }
        let (t0, t1) = (-b - disc.sqrt(), -b + disc.sqrt());
        // trapezoid is spectrally accurate for a flat-ended smooth integrand
        let n = 4096;
        let dt = (t1 - t0) / n as f64;
        (1..n)
            .map(|k| self.value(p + d * (t0 + k as f64 * dt)))
            .sum::<f64>()
            * dt
    }
}

impl TestFunction for TestBump {
    fn value(&self, p: Vec2) -> f64 {
        let q = (p - self.center).norm_sq() / (self.radius * self.radius);
        if q >= 1.0 {
            0.0
        } else {
            self.amplitude * (-1.0 / (1.0 - q)).exp()
        }
    }

    fn gradient(&self, p: Vec2) -> Vec2 {
        let r2 = self.radius * self.radius;
        let w = p - self.center;
        let q = w.norm_sq() / r2;
        if q >= 1.0 {
            return Vec2::ZERO;
        }
        let one_m = 1.0 - q;
        let val = self.amplitude * (-1.0 / one_m).exp();
        // d/dq exp(-1/(1-q)) = -exp(..)/(1-q)^2 ; dq/dx = 2 w / r^2
        w * (-val / (one_m * one_m) * 2.0 / r2)
    }

    fn bbox(&self) -> (Vec2, Vec2) {
        let r = Vec2::new(self.radius, self.radius);
        (self.center - r, self.center + r)
    }
}
