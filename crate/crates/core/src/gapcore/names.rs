use std::fmt;
use std::str::FromStr;

use crate::cube::ClopenSet;
use crate::error::{Error, ParseError, Result};

/// A name for a random subset of `{0, …, horizon-1}`: the event
/// `⟦n ∈ ȧ⟧` for each `n` below the horizon.
#[derive(Clone, Debug, PartialEq)]
pub struct RandomSubsetName {
    events: Vec<ClopenSet>,
}

/// Events built from a pair of names.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NameEvent {
    /// `⟦n ∈ ȧ ∩ ḃ⟧`
    IntersectionAt(usize),
    /// `⟦n ∈ ȧ ∖ ḃ⟧`
    DifferenceAt(usize),
    /// `⋀_{k≤n<M} (⟦n∈ȧ⟧ → ⟦n∈ḃ⟧)`
    SubsetBeyond(usize),
    /// `⋁_{k≤n<M} ⟦n ∈ ȧ ∩ ḃ⟧`
    NonemptyIntersectionBeyond(usize),
    /// `⋁_{k≤n<M} ⟦n ∈ ȧ △ ḃ⟧`
    DisagreementBeyond(usize),
}

impl RandomSubsetName {
    pub fn new(events: Vec<ClopenSet>) -> Self {
        RandomSubsetName { events }
    }

    pub fn horizon(&self) -> usize {
        self.events.len()
    }

    pub fn events(&self) -> &[ClopenSet] {
        &self.events
    }

    pub fn event(&self, n: usize) -> Result<&ClopenSet> {
        self.events.get(n).ok_or(Error::BeyondHorizon { n, horizon: self.horizon() })
    }

    /// The event of `kind` for the pair `(self, other)`, truncated at the
    /// common horizon.
    pub fn pair_event(&self, other: &RandomSubsetName, kind: NameEvent) -> Result<ClopenSet> {
        let horizon = self.horizon().min(other.horizon());
        let at = |n: usize| -> Result<(&ClopenSet, &ClopenSet)> {
            if n >= horizon {
                return Err(Error::BeyondHorizon { n, horizon });
            }
            Ok((&self.events[n], &other.events[n]))
        };
        let tail = |k: usize| -> Result<std::ops::Range<usize>> {
            if k > horizon {
                return Err(Error::BeyondHorizon { n: k, horizon });
            }
            Ok(k..horizon)
        };
        Ok(match kind {
            NameEvent::IntersectionAt(n) => {
                let (a, b) = at(n)?;
                a.meet(b)
            }
            NameEvent::DifferenceAt(n) => {
                let (a, b) = at(n)?;
                a.difference(b)
            }
            NameEvent::SubsetBeyond(k) => {
                let escapes = tail(k)?.fold(ClopenSet::empty(), |acc, n| {
                    acc.join(&self.events[n].difference(&other.events[n]))
                });
                escapes.complement()
            }
            NameEvent::NonemptyIntersectionBeyond(k) => tail(k)?.fold(ClopenSet::empty(), |acc, n| {
                acc.join(&self.events[n].meet(&other.events[n]))
            }),
            NameEvent::DisagreementBeyond(k) => tail(k)?.fold(ClopenSet::empty(), |acc, n| {
                acc.join(&self.events[n].symmetric_difference(&other.events[n]))
            }),
        })
    }
}

/// One line per index: `n : {…}`.
impl fmt::Display for RandomSubsetName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (n, e) in self.events.iter().enumerate() {
            writeln!(f, "{n} : {e}")?;
        }
        Ok(())
    }
}

impl FromStr for RandomSubsetName {
    type Err = ParseError;

    fn from_str(text: &str) -> std::result::Result<Self, Self::Err> {
        let mut events = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bad = || ParseError::new("name event line", line);
            let (n, e) = line.split_once(':').ok_or_else(bad)?;
            let n: usize = n.trim().parse().map_err(|_| bad())?;
            if n != events.len() {
                return Err(bad());
            }
            events.push(e.parse()?);
        }
        Ok(RandomSubsetName { events })
    }
}
