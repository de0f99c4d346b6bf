//! Numerical diagnostics for unit-length divergence-free vector fields in the
//! plane and for weak solutions of Burgers' equation.
//!
//! The crate is organised around a few sampled objects:
//!
//! * [`GridField2`] / [`GridScalar`]: node-centred samples on a uniform grid,
//! * [`Entropy`] and its plane extension [`ExtendedEntropy`],
//! * [`SpaceTimeField`]: samples `v(t, s)` of a Burgers solution,
//!
//! and the weak pairings, mollifier/commutator estimates, kinetic indicators
//! and characteristic diagnostics built on top of them.

// `!(x > 0.0)` style guards are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod burgers;
pub mod characteristics;
pub mod config;
pub mod entropy;
mod error;
pub mod fields;
pub mod geometry;
pub mod kinetic;
pub mod regularity;

pub use burgers::{EntropyPair, SpaceTimeBump, SpaceTimeField};
pub use characteristics::{Characteristic, ClassificationReport, Verdict};
pub use config::Tolerances;
pub use entropy::{ElementaryEntropy, Entropy, EntropyMap, ExtendedEntropy};
pub use error::{Error, Result};
pub use fields::{GridField2, GridScalar, GridSpec, TestBump, Window};
pub use geometry::Vec2;
pub use kinetic::{DirectionFan, KineticSlice};
pub use regularity::{Mollifier, SeminormReport};
