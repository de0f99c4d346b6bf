//! Characteristics `Ẋ = u^⊥(X)` of unit divergence-free fields, the
//! ordering principle along segments, vortex/Lipschitz classification and
//! winding numbers.

mod classify;
mod ordering;
mod trace;
mod winding;

pub use classify::{classify, ClassificationReport, Evidence, Verdict};
pub use ordering::{grid_pairs, ordering_check, random_pairs, OrderingReport};
pub use trace::{strip_average_defect, trace, trace_bidirectional, Characteristic, TraceStatus};
pub use winding::{winding_number, Loop, WindingReport};
