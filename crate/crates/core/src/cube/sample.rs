use std::collections::HashMap;

use rand::Rng;

use super::{ClopenSet, Coordinate};

/// A uniformly random point of the cube, with coordinates drawn lazily.
pub struct RandomPoint<'r, R: Rng> {
    rng: &'r mut R,
    bits: HashMap<Coordinate, bool>,
}

impl<'r, R: Rng> RandomPoint<'r, R> {
    pub fn new(rng: &'r mut R) -> Self {
        RandomPoint {
            rng,
            bits: HashMap::new(),
        }
    }

    pub fn bit(&mut self, c: Coordinate) -> bool {
        let rng = &mut *self.rng;
        *self.bits.entry(c).or_insert_with(|| rng.gen())
    }

    pub fn contained_in(&mut self, x: &ClopenSet) -> bool {
        x.contains_point(|c| self.bit(c))
    }
}

/// Fraction of `samples` uniform points that land in `x`.
pub fn empirical_frequency<R: Rng>(x: &ClopenSet, samples: usize, rng: &mut R) -> f64 {
    let hits = (0..samples)
        .filter(|_| RandomPoint::new(rng).contained_in(x))
        .count();
    hits as f64 / samples as f64
}
