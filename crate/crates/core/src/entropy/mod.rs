//! Entropies of the eikonal constraint: maps `Φ: S¹ → R²` with
//! `d/dθ Φ(e^{iθ}) · e^{iθ} = 0`, represented through a 2π-periodic
//! generator `φ` via `Φ(e^{iθ}) = φ(θ) e^{iθ} + φ'(θ) (e^{iθ})^⊥`.

mod description;
mod extension;
mod generator;
mod production;

pub use description::{AnyEntropy, EntropyDescription, FourierCoeffs, DEFAULT_DEGREE};
pub use extension::{cutoff, ExtendedEntropy};
pub use generator::{ElementaryEntropy, Entropy, PeriodicGenerator};
pub use production::{entropy_production, production_decomposition, ProductionDecomposition};

use crate::geometry::Vec2;

/// Anything that can be composed with a vector field pointwise.
pub trait EntropyMap: Sync {
    fn eval(&self, z: Vec2) -> Vec2;
}
