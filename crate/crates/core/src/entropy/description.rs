use super::{ElementaryEntropy, Entropy, EntropyMap};
use crate::geometry::Vec2;
use serde::{Deserialize, Serialize};

/// Degree used when a description asks for a Fourier projection without one.
pub const DEFAULT_DEGREE: usize = 32;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct FourierCoeffs {
    #[serde(default)]
    pub cos: Vec<f64>,
    #[serde(default)]
    pub sin: Vec<f64>,
}

/// JSON description of an entropy.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum EntropyDescription {
    Fourier { coeffs: FourierCoeffs },
    Elementary { theta0: f64 },
    SmoothedElementary { theta0: f64, k: u32 },
}

impl EntropyDescription {
    pub fn build(&self) -> AnyEntropy {
        match self {
            EntropyDescription::Fourier { coeffs } => AnyEntropy::Smooth(Entropy::from_fourier(
                coeffs.cos.clone(),
                coeffs.sin.clone(),
            )),
            EntropyDescription::Elementary { theta0 } => {
                AnyEntropy::Elementary(ElementaryEntropy::from_angle(*theta0))
            }
            EntropyDescription::SmoothedElementary { theta0, k } => AnyEntropy::Smooth(
                Entropy::approximate_elementary(Vec2::from_angle(*theta0), *k),
            ),
        }
    }
}

/// Either a smooth entropy or an elementary one.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyEntropy {
    Smooth(Entropy),
    Elementary(ElementaryEntropy),
}

impl EntropyMap for AnyEntropy {
    fn eval(&self, z: Vec2) -> Vec2 {
        match self {
            AnyEntropy::Smooth(e) => e.eval(z),
            AnyEntropy::Elementary(e) => e.eval(z),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_all_kinds() {
        let f: EntropyDescription =
            serde_json::from_str(r#"{"type":"fourier","coeffs":{"cos":[1.0]}}"#).unwrap();
        assert_eq!(f.build(), AnyEntropy::Smooth(Entropy::identity()));
        let e: EntropyDescription =
            serde_json::from_str(r#"{"type":"elementary","theta0":0.0}"#).unwrap();
        assert_eq!(e.build().eval(Vec2::new(1.0, 0.5)), Vec2::E1);
        let s: EntropyDescription =
            serde_json::from_str(r#"{"type":"smoothed-elementary","theta0":1.0,"k":4}"#).unwrap();
        assert!(matches!(s.build(), AnyEntropy::Smooth(_)));
        let back = serde_json::to_string(&s).unwrap();
        assert_eq!(
            serde_json::from_str::<EntropyDescription>(&back).unwrap(),
            s
        );
    }
}
