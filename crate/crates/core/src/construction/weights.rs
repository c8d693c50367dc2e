use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// `⌊∛x⌋`.
pub fn icbrt(x: u128) -> u128 {
    let (mut lo, mut hi) = (0u128, 1u128 << 43);
    while lo < hi {
        let mid = (lo + hi + 1) / 2;
        if mid.checked_pow(3).is_some_and(|c| c <= x) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    lo
}

/// Fractional bits of the cube-root sandwich.
const PRECISION: u32 = 20;

/// Summable positive weights `h(n)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum WeightSequence {
    /// `1/(n+2)²`, exact.
    InverseSquare,
    /// `(n+1)^(−4/3)`, through rational bounds on either side.
    FourThirds,
}

fn ratio(p: u128, q: u128) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

impl WeightSequence {
    /// A rational `≤ h(n)`, positive.
    pub fn lower(&self, n: usize) -> BigRational {
        match self {
            WeightSequence::InverseSquare => ratio(1, (n as u128 + 2).pow(2)),
            WeightSequence::FourThirds => {
                let c = icbrt((n as u128 + 1) << (3 * PRECISION));
                ratio(1 << PRECISION, (n as u128 + 1) * (c + 1))
            }
        }
    }

    /// A rational `≥ h(n)`.
    pub fn upper(&self, n: usize) -> BigRational {
        match self {
            WeightSequence::InverseSquare => self.lower(n),
            WeightSequence::FourThirds => {
                let c = icbrt((n as u128 + 1) << (3 * PRECISION));
                ratio(1 << PRECISION, (n as u128 + 1) * c)
            }
        }
    }

    /// A certified bound on the infinite tail `Σ_{n≥p} h(n)`, by comparison
    /// with the integral of the decreasing envelope.
    pub fn tail_bound(&self, p: usize) -> Option<BigRational> {
        match self {
            WeightSequence::InverseSquare => Some(ratio(1, p as u128 + 1)),
            WeightSequence::FourThirds => {
                let r = icbrt(p as u128);
                (r > 0).then(|| ratio(3, r))
            }
        }
    }

    /// Smallest `p < horizon` whose certified tail is below `target`.
    pub fn certified_tail_start(&self, target: &BigRational, horizon: usize) -> Option<usize> {
        // tail bounds decrease in p
        let ok = |p: usize| self.tail_bound(p).is_some_and(|b| &b < target);
        if horizon == 0 || !ok(horizon - 1) {
            return None;
        }
        let (mut lo, mut hi) = (0, horizon - 1);
        while lo < hi {
            let mid = (lo + hi) / 2;
            if ok(mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        Some(lo)
    }

    /// Exact partial sums `Σ_{n<q} upper(n)` for `q ≤ horizon`; monotone.
    pub fn partial_sums(&self, horizon: usize) -> Vec<BigRational> {
        let mut acc = BigRational::zero();
        let mut out = Vec::with_capacity(horizon + 1);
        out.push(acc.clone());
        for n in 0..horizon {
            acc += self.upper(n);
            out.push(acc.clone());
        }
        out
    }

    /// `Σ_{n<horizon} h(n) + tail(horizon)`: an upper bound for the whole sum.
    pub fn total_bound(&self, horizon: usize) -> Option<BigRational> {
        let head = self.partial_sums(horizon).pop().unwrap_or_else(BigRational::zero);
        self.tail_bound(horizon).map(|t| head + t)
    }
}

impl std::fmt::Display for WeightSequence {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            WeightSequence::InverseSquare => "1/(n+2)^2",
            WeightSequence::FourThirds => "(n+1)^(-4/3)",
        })
    }
}

impl std::str::FromStr for WeightSequence {
    type Err = crate::error::ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inverse-square" | "1/(n+2)^2" => Ok(WeightSequence::InverseSquare),
            "four-thirds" | "(n+1)^(-4/3)" => Ok(WeightSequence::FourThirds),
            _ => Err(crate::error::ParseError::new("weight sequence", s)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn cube_root() {
        for x in 0..3000u128 {
            let r = icbrt(x);
            assert!(r.pow(3) <= x && (r + 1).pow(3) > x);
        }
        assert_eq!(icbrt(1 << 60), 1 << 20);
        let r = icbrt(u128::MAX);
        assert!(r.pow(3) <= u128::MAX && (r + 1).checked_pow(3).is_none());
    }

    #[test]
    fn four_thirds_sandwich() {
        let h = WeightSequence::FourThirds;
        for n in [0usize, 1, 6, 7, 63, 999, 123_456] {
            let (lo, hi) = (h.lower(n), h.upper(n));
            assert!(lo < hi || n == 0 || n == 7 || n == 63 || n == 999);
            // lo³·(n+1)⁴ ≤ 1 ≤ hi³·(n+1)⁴
            let m = BigRational::from_integer(BigInt::from(n + 1)).pow(4);
            assert!(lo.pow(3) * &m <= BigRational::one());
            assert!(hi.pow(3) * &m >= BigRational::one());
        }
        assert_eq!(h.lower(0), BigRational::one() * ratio(1 << 20, (1 << 20) + 1));
    }

    #[test]
    fn tails_dominate_long_partial_sums() {
        for h in [WeightSequence::InverseSquare, WeightSequence::FourThirds] {
            let sums = h.partial_sums(200);
            for p in [1usize, 10, 100] {
                let head = &sums[200] - &sums[p];
                assert!(head < h.tail_bound(p).unwrap());
            }
            assert!(sums.windows(2).all(|w| w[0] < w[1]));
        }
        assert!(WeightSequence::FourThirds.tail_bound(0).is_none());
    }

    #[test]
    fn certified_start() {
        let h = WeightSequence::InverseSquare;
        // 1/(p+1) < 1/96 iff p ≥ 96
        assert_eq!(h.certified_tail_start(&ratio(1, 96), 128), Some(96));
        assert_eq!(h.certified_tail_start(&ratio(1, 96), 96), None);
        assert_eq!(WeightSequence::FourThirds.certified_tail_start(&ratio(1, 96), 10_000), None);
    }
}
