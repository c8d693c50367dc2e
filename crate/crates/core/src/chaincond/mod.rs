//! Correlation of joins of disjoint independent pairs, Gillis-type
//! extraction on the exact pair graph, and the conditional chain-condition
//! extraction for pairs `(x, s)` with `s` a finite partial assignment.
//!
//! The conditional analogue of Gillis' theorem is false for arbitrary
//! conditions; only cylinder conditions are handled here, and every pair an
//! extractor returns has been checked exactly.

mod conditional;
mod gillis;
mod random;
mod unfavourable;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

pub use conditional::{conditional_extract, ConditionalExtraction, IndexedEventPair, StageRecord, Transcript};
pub use gillis::{gillis_extract, worst_conditional_pair};
pub use random::{random_event_pairs, SHARED_BLOCK};
pub use unfavourable::{unfavourable_check, Unfavourable};

/// A threshold `δ ∈ (0, 1)` stored through its square, so that irrational
/// values such as `√(1 − ε/2)` compare exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Delta {
    square: BigRational,
}

impl Delta {
    pub fn from_value(delta: &BigRational) -> Result<Self> {
        if !delta.is_positive_proper() {
            return Err(Error::Precondition(format!("delta must lie in (0, 1), got {delta}")));
        }
        Ok(Delta {
            square: delta * delta,
        })
    }

    pub fn from_square(square: BigRational) -> Result<Self> {
        if !square.is_positive_proper() {
            return Err(Error::Precondition(format!("delta squared must lie in (0, 1), got {square}")));
        }
        Ok(Delta { square })
    }

    /// `δ²`.
    pub fn square(&self) -> &BigRational {
        &self.square
    }

    /// `δ·σ`.
    pub fn scaled(&self, sigma: &BigRational) -> Delta {
        Delta {
            square: &self.square * sigma * sigma,
        }
    }

    /// `value > δ`.
    pub fn is_exceeded_by(&self, value: &BigRational) -> bool {
        value.is_positive_strict() && value * value > self.square
    }
}

trait Proper {
    fn is_positive_proper(&self) -> bool;
    fn is_positive_strict(&self) -> bool;
}

impl Proper for BigRational {
    fn is_positive_proper(&self) -> bool {
        self > &BigRational::zero() && self < &BigRational::one()
    }

    fn is_positive_strict(&self) -> bool {
        self > &BigRational::zero()
    }
}
