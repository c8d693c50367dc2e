//! The explicit construction: base names from disjoint coordinate windows,
//! the tower, extended names, clopen approximants of name pairs, summable
//! weights, and exact verifiers reporting one record per checked relation.

mod blocks;
mod extended;
mod representatives;
mod summability;
mod tower;
mod weights;

pub use blocks::{
    base_assignment, base_names, ceil_log2, phi, verify_base_names, verify_blocks, verify_cross_terms, window,
    window_coords,
};
pub use extended::{extended_gap_checks, extended_names, verify_extended_gap};
pub use crate::report::{tag, Check, Report};
pub use representatives::{
    continuous_representatives, reserved_coordinate, truncated_disagreement, Representatives, RESERVED_BASE,
};
pub use summability::{summability_diagnostic, Summability};
pub use tower::{build_tower, entry_threshold, Tower};
pub use weights::{icbrt, WeightSequence};
