//! Representable sets with the Baire property and exact measure, plus the
//! lazy non-measurable oracle.

mod oracle;
mod refine;
mod repset;

pub use oracle::{NonMeasOracle, Request};
pub use refine::refine_closed;
pub use repset::{intersect, minus, union, Category, RepSet};

use crate::catalog::FuncSpec;

/// The dense set on which a Baire-measurable catalog entry is continuous.
pub fn continuity_set(f: &FuncSpec) -> RepSet {
    minus(&RepSet::unit(), f.exceptional()).expect("catalog exceptions are representable")
}
