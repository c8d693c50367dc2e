use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseError;

/// An exact value `numerator / 2^exponent`, kept reduced (odd numerator or
/// exponent zero).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DyadicRational {
    numerator: BigInt,
    exponent: u32,
}

impl DyadicRational {
    pub fn new(numerator: impl Into<BigInt>, exponent: u32) -> Self {
        let mut d = DyadicRational {
            numerator: numerator.into(),
            exponent,
        };
        d.reduce();
        d
    }

    pub fn zero() -> Self {
        DyadicRational::new(0, 0)
    }

    pub fn one() -> Self {
        DyadicRational::new(1, 0)
    }

    /// `2^(-k)`.
    pub fn pow2_neg(k: u32) -> Self {
        DyadicRational::new(1, k)
    }

    pub fn numerator(&self) -> &BigInt {
        &self.numerator
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.exponent == 0 && self.numerator.is_one()
    }

    pub fn half(&self) -> Self {
        DyadicRational::new(self.numerator.clone(), self.exponent + 1)
    }

    /// `1 - self`.
    pub fn complement(&self) -> Self {
        DyadicRational::one() - self.clone()
    }

    pub fn to_rational(&self) -> BigRational {
        BigRational::new(self.numerator.clone(), BigInt::one() << self.exponent)
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        self.to_rational().to_f64().unwrap_or(f64::NAN)
    }

    fn reduce(&mut self) {
        if self.numerator.is_zero() {
            self.exponent = 0;
            return;
        }
        while self.exponent > 0 && self.numerator.is_even() {
            self.numerator >>= 1u32;
            self.exponent -= 1;
        }
    }

    fn aligned(&self, other: &Self) -> (BigInt, BigInt, u32) {
        let e = self.exponent.max(other.exponent);
        let a = &self.numerator << (e - self.exponent);
        let b = &other.numerator << (e - other.exponent);
        (a, b, e)
    }
}

impl Add for DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> Self {
        let (a, b, e) = self.aligned(&rhs);
        DyadicRational::new(a + b, e)
    }
}

impl Sub for DyadicRational {
    type Output = DyadicRational;
    fn sub(self, rhs: Self) -> Self {
        let (a, b, e) = self.aligned(&rhs);
        DyadicRational::new(a - b, e)
    }
}

impl Mul for DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> Self {
        DyadicRational::new(self.numerator * rhs.numerator, self.exponent + rhs.exponent)
    }
}

impl<'a> Add<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn add(self, rhs: Self) -> DyadicRational {
        self.clone() + rhs.clone()
    }
}

impl<'a> Mul<&'a DyadicRational> for &'a DyadicRational {
    type Output = DyadicRational;
    fn mul(self, rhs: Self) -> DyadicRational {
        self.clone() * rhs.clone()
    }
}

impl PartialOrd for DyadicRational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DyadicRational {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b, _) = self.aligned(other);
        a.cmp(&b)
    }
}

impl std::iter::Sum for DyadicRational {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(DyadicRational::zero(), |acc, x| acc + x)
    }
}

impl From<DyadicRational> for BigRational {
    fn from(d: DyadicRational) -> Self {
        d.to_rational()
    }
}

impl fmt::Display for DyadicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/2^{}", self.numerator, self.exponent)
    }
}

impl FromStr for DyadicRational {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new("dyadic rational", s);
        let (num, den) = s.trim().split_once('/').ok_or_else(bad)?;
        let exp = den.trim().strip_prefix("2^").ok_or_else(bad)?;
        let numerator: BigInt = num.trim().parse().map_err(|_| bad())?;
        let exponent: u32 = exp.trim().parse().map_err(|_| bad())?;
        Ok(DyadicRational::new(numerator, exponent))
    }
}

/// Formats an exact rational as `p/q` (always with a denominator).
pub fn format_rational(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Parses `p/q` or a bare integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ParseError> {
    let bad = || ParseError::new("rational", s);
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if q.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(p, q))
        }
        None => {
            let p: BigInt = s.parse().map_err(|_| bad())?;
            Ok(BigRational::from_integer(p))
        }
    }
}

/// True iff `r` is strictly between 0 and 1.
pub fn is_proper_fraction(r: &BigRational) -> bool {
    r.is_positive() && r < &BigRational::one()
}
