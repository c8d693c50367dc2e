//! Pregaps over concrete finite families and over names: the `K` and `L^k`
//! pair partitions, homogeneity, minimal cuts, interpolation above a cut,
//! Δ-system extraction and uniformization.

mod delta;
mod names;
mod pregap;
mod uniform;

use serde::Serialize;

pub use delta::{delta_system, DeltaSystem};
pub use names::{NameEvent, RandomSubsetName};
pub use pregap::{interpolates_mod_k, ConcretePregap, PartitionLabel};
pub use uniform::{modal_class, uniformize, KeyValue, Label, Structure, UniformKey};

/// Result of a finite extraction: the largest object found, and whether it
/// reaches the caller's threshold.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Extraction<T> {
    pub found: T,
    pub threshold: usize,
    pub meets_threshold: bool,
}

impl<T> Extraction<T> {
    pub fn new(found: T, threshold: usize, meets_threshold: bool) -> Self {
        Extraction {
            found,
            threshold,
            meets_threshold,
        }
    }
}
