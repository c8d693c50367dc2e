//! Clopen subsets of a finite Cantor cube with their exact Haar measure.
//!
//! Coordinates are `(block, offset)` pairs; the cube is implicitly the
//! product over whichever coordinates are mentioned, since the measure of a
//! clopen set does not depend on unused coordinates.

mod assignment;
mod clopen;
mod dyadic;
mod sample;

pub use assignment::{Coordinate, PartialAssignment};
pub use clopen::{BoolOp, ClopenSet};
pub use dyadic::{format_rational, is_proper_fraction, parse_rational, DyadicRational};
pub use sample::{empirical_frequency, RandomPoint};
