use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::ParseError;

/// A coordinate of the cube: `offset` within ordinal block `block`
/// (the ordinal `ω·block + offset`). Ordered lexicographically.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coordinate {
    pub block: u64,
    pub offset: u64,
}

impl Coordinate {
    pub const fn new(block: u64, offset: u64) -> Self {
        Coordinate { block, offset }
    }
}

impl fmt::Display for Coordinate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.block, self.offset)
    }
}

impl FromStr for Coordinate {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new("coordinate", s);
        let (b, o) = s.trim().split_once('.').ok_or_else(bad)?;
        Ok(Coordinate {
            block: b.trim().parse().map_err(|_| bad())?,
            offset: o.trim().parse().map_err(|_| bad())?,
        })
    }
}

/// A finite partial function from coordinates to bits.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialAssignment {
    entries: BTreeMap<Coordinate, bool>,
}

impl PartialAssignment {
    pub fn new() -> Self {
        PartialAssignment::default()
    }

    /// Builds an assignment; `None` if some coordinate is given two values.
    pub fn try_from_entries(entries: impl IntoIterator<Item = (Coordinate, bool)>) -> Option<Self> {
        let mut s = PartialAssignment::new();
        for (c, b) in entries {
            if !s.set(c, b) {
                return None;
            }
        }
        Some(s)
    }

    /// Panics on conflicting entries; meant for literals in tests and tables.
    pub fn from_entries(entries: impl IntoIterator<Item = (Coordinate, bool)>) -> Self {
        Self::try_from_entries(entries).expect("conflicting partial assignment")
    }

    /// Sets `c` to `bit`. Returns false (and leaves `self` unchanged) if `c`
    /// already holds the other bit.
    pub fn set(&mut self, c: Coordinate, bit: bool) -> bool {
        match self.entries.get(&c) {
            Some(&old) => old == bit,
            None => {
                self.entries.insert(c, bit);
                true
            }
        }
    }

    pub fn get(&self, c: Coordinate) -> Option<bool> {
        self.entries.get(&c).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coordinate, bool)> + '_ {
        self.entries.iter().map(|(&c, &b)| (c, b))
    }

    pub fn domain(&self) -> impl Iterator<Item = Coordinate> + '_ {
        self.entries.keys().copied()
    }

    pub fn domain_set(&self) -> BTreeSet<Coordinate> {
        self.entries.keys().copied().collect()
    }

    pub fn contains(&self, c: Coordinate) -> bool {
        self.entries.contains_key(&c)
    }

    /// Agree on the common domain.
    pub fn compatible(&self, other: &PartialAssignment) -> bool {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        small
            .entries
            .iter()
            .all(|(c, b)| large.entries.get(c).is_none_or(|x| x == b))
    }

    /// `self ∪ other` if compatible.
    pub fn union(&self, other: &PartialAssignment) -> Option<PartialAssignment> {
        if !self.compatible(other) {
            return None;
        }
        let mut out = self.clone();
        out.entries.extend(other.entries.iter().map(|(&c, &b)| (c, b)));
        Some(out)
    }

    /// `self ⊇ other` as sets of pairs.
    pub fn extends(&self, other: &PartialAssignment) -> bool {
        other.len() <= self.len() && other.entries.iter().all(|(c, b)| self.entries.get(c) == Some(b))
    }

    /// Entries of `self` whose coordinate lies outside `dom(other)`.
    pub fn without_domain_of(&self, other: &PartialAssignment) -> PartialAssignment {
        PartialAssignment {
            entries: self
                .entries
                .iter()
                .filter(|(c, _)| !other.entries.contains_key(c))
                .map(|(&c, &b)| (c, b))
                .collect(),
        }
    }

    pub fn without(&self, c: Coordinate) -> PartialAssignment {
        let mut out = self.clone();
        out.entries.remove(&c);
        out
    }

    pub fn restricted_to(&self, domain: &BTreeSet<Coordinate>) -> PartialAssignment {
        PartialAssignment {
            entries: self
                .entries
                .iter()
                .filter(|(c, _)| domain.contains(c))
                .map(|(&c, &b)| (c, b))
                .collect(),
        }
    }

    /// Renames every coordinate through `f`. `f` must be injective on the domain.
    pub fn relabeled(&self, mut f: impl FnMut(Coordinate) -> Coordinate) -> PartialAssignment {
        PartialAssignment {
            entries: self.entries.iter().map(|(&c, &b)| (f(c), b)).collect(),
        }
    }

    /// Does the point (given as a coordinate oracle) extend this assignment?
    pub fn satisfied_by(&self, point: &mut impl FnMut(Coordinate) -> bool) -> bool {
        self.entries.iter().all(|(&c, &b)| point(c) == b)
    }
}

impl FromIterator<(Coordinate, bool)> for PartialAssignment {
    fn from_iter<I: IntoIterator<Item = (Coordinate, bool)>>(iter: I) -> Self {
        PartialAssignment::from_entries(iter)
    }
}

impl fmt::Display for PartialAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (c, b)) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}={}", c, u8::from(b))?;
        }
        f.write_str(")")
    }
}

impl FromStr for PartialAssignment {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new("partial assignment", s);
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let mut out = PartialAssignment::new();
        for entry in inner.split(',').map(str::trim).filter(|e| !e.is_empty()) {
            let (c, b) = entry.split_once('=').ok_or_else(bad)?;
            let c: Coordinate = c.parse().map_err(|_| bad())?;
            let b = match b.trim() {
                "0" => false,
                "1" => true,
                _ => return Err(bad()),
            };
            if !out.set(c, b) {
                return Err(bad());
            }
        }
        Ok(out)
    }
}
