use std::collections::BTreeSet;

use crate::cube::{ClopenSet, DyadicRational};
use crate::error::{Error, Result};

/// Both sides of `μ(⋁_A x_i ∧ ⋁_B y_i) ≤ μ(⋁_A x_i)·μ(⋁_B y_i)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unfavourable {
    pub lhs: DyadicRational,
    pub rhs: DyadicRational,
    /// `lhs == rhs`, computed.
    pub equality: bool,
    /// Whether equality is forced by the shape of the instance: some
    /// `x_i = 1` with `i ∈ A`, some `y_i = 1` with `i ∈ B`, or every
    /// `i ∈ A ∩ B` has `x_i = 0` or `y_i = 0` (vacuous when `A ∩ B = ∅`).
    pub predicted_equality: bool,
}

impl Unfavourable {
    pub fn holds(&self) -> bool {
        self.lhs <= self.rhs && self.equality == self.predicted_equality
    }
}

/// Evaluates the correlation inequality for the family `pairs` restricted
/// to `a` (on the `x` side) and `b` (on the `y` side).
///
/// The pairs must be independently determined (the coordinates determining
/// `{x_i, y_i}` pairwise disjoint in `i`) with `x_i ∧ y_i = 0`.
pub fn unfavourable_check(
    pairs: &[(ClopenSet, ClopenSet)],
    a: &BTreeSet<usize>,
    b: &BTreeSet<usize>,
) -> Result<Unfavourable> {
    if let Some(&i) = a.iter().chain(b).find(|&&i| i >= pairs.len()) {
        return Err(Error::UnknownIndex(i));
    }
    let coords: Vec<BTreeSet<_>> = pairs
        .iter()
        .map(|(x, y)| x.determining_coords().union(&y.determining_coords()).copied().collect())
        .collect();
    for i in 0..pairs.len() {
        if !pairs[i].0.is_disjoint_from(&pairs[i].1) {
            return Err(Error::Precondition(format!("x_{i} and y_{i} intersect")));
        }
        for j in i + 1..pairs.len() {
            if let Some(c) = coords[i].intersection(&coords[j]).next() {
                return Err(Error::NotIndependent(format!("pairs {i} and {j} share coordinate {c}")));
            }
        }
    }

    let big_x = a.iter().fold(ClopenSet::empty(), |acc, &i| acc.join(&pairs[i].0));
    let big_y = b.iter().fold(ClopenSet::empty(), |acc, &i| acc.join(&pairs[i].1));
    let lhs = big_x.meet(&big_y).measure();
    let rhs = big_x.measure() * big_y.measure();

    let predicted_equality = a.iter().any(|&i| pairs[i].0.is_whole_measure())
        || b.iter().any(|&i| pairs[i].1.is_whole_measure())
        || a.intersection(b).all(|&i| pairs[i].0.is_empty() || pairs[i].1.is_empty());

    Ok(Unfavourable {
        equality: lhs == rhs,
        lhs,
        rhs,
        predicted_equality,
    })
}

trait Full {
    fn is_whole_measure(&self) -> bool;
}

impl Full for ClopenSet {
    fn is_whole_measure(&self) -> bool {
        self.measure().is_one()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{Coordinate, PartialAssignment};

    fn half(block: u64, bit: bool) -> ClopenSet {
        ClopenSet::cylinder(PartialAssignment::from_entries([(Coordinate::new(block, 0), bit)]))
    }

    fn set(v: &[usize]) -> BTreeSet<usize> {
        v.iter().copied().collect()
    }

    #[test]
    fn disjoint_index_sets_give_equality() {
        let pairs = vec![(half(0, false), half(0, true)), (half(1, false), half(1, true))];
        let r = unfavourable_check(&pairs, &set(&[0]), &set(&[1])).unwrap();
        assert!(r.equality && r.predicted_equality);
        assert_eq!(r.lhs, DyadicRational::new(1, 2));
    }

    #[test]
    fn single_disjoint_pair() {
        let pairs = vec![(half(0, false), half(0, true))];
        let r = unfavourable_check(&pairs, &set(&[0]), &set(&[0])).unwrap();
        assert!(r.lhs.is_zero());
        assert_eq!(r.rhs, DyadicRational::new(1, 2));
        assert!(!r.equality && r.holds());
    }

    #[test]
    fn two_half_space_pairs_strict() {
        let pairs = vec![(half(0, false), half(0, true)), (half(1, false), half(1, true))];
        let r = unfavourable_check(&pairs, &set(&[0, 1]), &set(&[0, 1])).unwrap();
        // by hand: 1 − P(all 0) − P(all 1) = 1/2 against (3/4)²
        assert_eq!(r.lhs, DyadicRational::new(1, 1));
        assert_eq!(r.rhs, DyadicRational::new(9, 4));
        assert!(!r.equality && !r.predicted_equality);
    }

    #[test]
    fn full_x_outside_the_overlap_forces_equality() {
        // x_1 = 1 with 1 ∈ B∖A does not force equality; x_0 = 1 with 0 ∈ A does
        let pairs = vec![(half(0, false), half(0, true)), (ClopenSet::whole(), ClopenSet::empty())];
        let r = unfavourable_check(&pairs, &set(&[0]), &set(&[0, 1])).unwrap();
        assert!(!r.equality && !r.predicted_equality);
        let r = unfavourable_check(&pairs, &set(&[0, 1]), &set(&[0])).unwrap();
        assert!(r.equality && r.predicted_equality);
    }

    #[test]
    fn shared_coordinates_rejected() {
        let overlap = half(0, true).meet(&half(1, false));
        let pairs = vec![(half(0, false), half(0, true)), (overlap, half(1, true))];
        assert!(matches!(
            unfavourable_check(&pairs, &set(&[0]), &set(&[1])),
            Err(Error::NotIndependent(_))
        ));
        let pairs = vec![(half(0, false), half(0, false))];
        assert!(matches!(unfavourable_check(&pairs, &set(&[0]), &set(&[0])), Err(Error::Precondition(_))));
    }
}
