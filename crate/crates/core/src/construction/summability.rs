use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::blocks::ceil_log2;
use crate::cube::DyadicRational;
use crate::error::{Error, Result};

/// Partial sums over a finite index set `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summability {
    /// `Σ_{n∈a} μ(⟦n ∈ ċ_α⟧) = Σ_{n∈a} 2^(−⌈log₂(n+2)⌉)`.
    pub measure_sum: DyadicRational,
    /// `Σ_{n∈a} 1/(n+1)`.
    pub comparison_sum: BigRational,
}

/// Finite diagnostic for the summability of the base-event measures over
/// `a`, next to the harmonic comparison series. No limit is claimed.
pub fn summability_diagnostic(a: &BTreeSet<usize>, horizon: usize) -> Result<Summability> {
    if let Some(&n) = a.iter().find(|&&n| n >= horizon) {
        return Err(Error::BeyondHorizon { n, horizon });
    }
    let measure_sum = a
        .iter()
        .map(|&n| DyadicRational::pow2_neg(ceil_log2(n as u64 + 2)))
        .sum();
    let comparison_sum = a.iter().fold(BigRational::zero(), |acc, &n| {
        acc + BigRational::new(BigInt::from(1), BigInt::from(n + 1))
    });
    Ok(Summability {
        measure_sum,
        comparison_sum,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let empty = summability_diagnostic(&BTreeSet::new(), 10).unwrap();
        assert!(empty.measure_sum.is_zero());
        let zero = summability_diagnostic(&[0].into(), 10).unwrap();
        assert_eq!(zero.measure_sum, DyadicRational::new(1, 1));
        assert!(summability_diagnostic(&[10].into(), 10).is_err());
    }

    #[test]
    fn sparse_set_bounded_by_one() {
        // n = 2^k − 2 has 2^(−k): a geometric series
        let horizon = 1 << 20;
        let a: BTreeSet<usize> = (1..21).map(|k| (1usize << k) - 2).filter(|&n| n < horizon).collect();
        let s = summability_diagnostic(&a, horizon).unwrap();
        assert!(s.measure_sum < DyadicRational::one());
        // sandwich: μ > 1/(2n+4) gives the comparison series within a factor 2
        assert!(s.comparison_sum < BigRational::from_integer(4.into()));
    }
}
