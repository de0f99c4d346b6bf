//! Fractional Sobolev seminorms and the mollifier/commutator pipeline.
//!
//! All pair sums are evaluated per output node in a fixed order and reduced
//! sequentially, so results do not depend on the thread count.

mod commutator;
mod mollifier;
mod seminorm;

pub use commutator::{
    cet_bound, defect, defect_bound_at, defect_pairwise_at, derivative_bound_at, mollify,
    mollify_at, CetReport, MollifiedField,
};
pub use mollifier::{Mollifier, Mollifier1d, Stencil1d, Stencil2d};
pub use seminorm::{
    gagliardo_seminorm, gagliardo_seminorm_1d, NodeData, SeminormOptions, SeminormReport, Subsample,
};
