//! Consecutive and contiguous orderings of set families.

pub mod consecutive;
pub mod contiguous;
pub mod family;

pub use consecutive::consecutive_ordering;
pub use contiguous::{contiguous_ordering, contiguous_separator_free};
pub use family::{
    equivalence_classes, extend_family, has_triple_violation, is_consecutive, is_contiguous,
    is_cut, is_separator, is_separator_free, member_cuts, minimal_maximal, overlaps,
    parse_family, SetFamily,
};
