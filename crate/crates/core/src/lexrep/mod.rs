//! Ordered, directed and strong decompositions and the lexicographic
//! representation they yield.

mod classify;
mod family;
mod fibers;
mod subdirect;
pub(crate) mod view;

pub use classify::{classify_local_retractive, head_maximality, Classification, HeadMaximality};
pub use family::{
    find_strong_family, functor_map, represent, FamilySearch, FunctorMap, Representation, Section, StrongFamily,
};
pub use fibers::{
    is_directed_decomposition, is_ordered_decomposition, ordered_decomposition_consequences, quotient_head_iso,
    same_fibers, HeadIso, OrderedReport,
};
pub use subdirect::{subdirect_decompose, Factor, Subdirect};

#[cfg(test)]
mod tests;
