use serde::{Deserialize, Serialize};

/// Flux `f(v)` of the scalar law `v_t + f(v)_s = 0`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Flux {
    /// `v²/2`.
    #[default]
    Burgers,
    /// `sign · √(1 - v²)` for `|v| ≤ 1`, clamped outside.
    Eikonal { sign: f64 },
}

impl Flux {
    pub fn eval(&self, v: f64) -> f64 {
        match *self {
            Flux::Burgers => 0.5 * v * v,
            Flux::Eikonal { sign } => sign * (1.0 - v * v).max(0.0).sqrt(),
        }
    }
}

/// Convex entropy `η` with Burgers flux `q`, `q'(w) = w η'(w)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum EntropyPair {
    /// `(v²/2, v³/3)`.
    Energy,
    /// `(|v - k|, sign(v - k)(v² - k²)/2)`.
    Kruzhkov { k: f64 },
    /// `η = Σ c_n vⁿ`, `q = Σ n c_n v^{n+1}/(n+1)`.
    Polynomial { coeffs: Vec<f64> },
}

impl EntropyPair {
    pub fn eta(&self, v: f64) -> f64 {
        match self {
            EntropyPair::Energy => 0.5 * v * v,
            EntropyPair::Kruzhkov { k } => (v - k).abs(),
            EntropyPair::Polynomial { coeffs } => {
                coeffs.iter().rev().fold(0.0, |acc, c| acc * v + c)
            }
        }
    }

    pub fn q(&self, v: f64) -> f64 {
        match self {
            EntropyPair::Energy => v * v * v / 3.0,
            EntropyPair::Kruzhkov { k } => {
                let s = if v > *k {
                    1.0
                } else if v < *k {
                    -1.0
                } else {
                    0.0
                };
                0.5 * s * (v * v - k * k)
            }
            EntropyPair::Polynomial { coeffs } => coeffs
                .iter()
                .enumerate()
                .map(|(n, c)| n as f64 * c * v.powi(n as i32 + 1) / (n as f64 + 1.0))
                .sum(),
        }
    }

    /// `η'(v)`, `None` at a kink.
    pub fn eta_prime(&self, v: f64) -> Option<f64> {
        match self {
            EntropyPair::Energy => Some(v),
            EntropyPair::Kruzhkov { k } => {
                if v == *k {
                    None
                } else {
                    Some((v - k).signum())
                }
            }
            EntropyPair::Polynomial { coeffs } => Some(
                coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(n, c)| n as f64 * c * v.powi(n as i32 - 1))
                    .sum(),
            ),
        }
    }

    /// Kink location, if any.
    pub fn kink(&self) -> Option<f64> {
        match self {
            EntropyPair::Kruzhkov { k } => Some(*k),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        match self {
            EntropyPair::Energy => "energy".into(),
            EntropyPair::Kruzhkov { k } => format!("kruzhkov({k})"),
            EntropyPair::Polynomial { coeffs } => {
                format!("polynomial(degree {})", coeffs.len().saturating_sub(1))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kruzhkov_flux_values() {
        let p = EntropyPair::Kruzhkov { k: 0.5 };
        assert_eq!(p.q(1.0), 0.375);
        assert_eq!(p.q(0.0), 0.125);
        assert_eq!(p.eta_prime(0.5), None);
    }

    #[test]
    fn polynomial_pair_reduces_to_energy() {
        let p = EntropyPair::Polynomial {
            coeffs: vec![0.0, 0.0, 0.5],
        };
        for v in [-1.3, 0.2, 2.0] {
            assert!((p.eta(v) - EntropyPair::Energy.eta(v)).abs() < 1e-15);
            assert!((p.q(v) - EntropyPair::Energy.q(v)).abs() < 1e-15);
        }
    }

    #[test]
    fn fluxes() {
        assert_eq!(Flux::Burgers.eval(2.0), 2.0);
        assert_eq!(Flux::Eikonal { sign: -1.0 }.eval(0.0), -1.0);
    }
}
