use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::construction::{base_names, build_tower, extended_names, WeightSequence};
use crate::cube::{ClopenSet, PartialAssignment};
use crate::error::{Error, ParseError, Result};
use crate::gapcore::RandomSubsetName;

/// Where the name pairs of an instance come from.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum NamesSource {
    /// The base names `(ċ_α, ḋ_α)` for `α < generators`.
    Base { generators: usize, horizon: usize },
    /// The tower-extended names `(â_α, b̂_α)`.
    Extended { generators: usize, horizon: usize },
    /// Listed event by event in the instance file.
    Explicit { generators: usize, horizon: usize },
}

impl NamesSource {
    pub fn generators(&self) -> usize {
        match *self {
            NamesSource::Base { generators, .. }
            | NamesSource::Extended { generators, .. }
            | NamesSource::Explicit { generators, .. } => generators,
        }
    }

    pub fn horizon(&self) -> usize {
        match *self {
            NamesSource::Base { horizon, .. }
            | NamesSource::Extended { horizon, .. }
            | NamesSource::Explicit { horizon, .. } => horizon,
        }
    }

    /// The name pairs, or `None` for explicit sources.
    pub fn build(&self) -> Result<Option<Vec<(RandomSubsetName, RandomSubsetName)>>> {
        Ok(match *self {
            NamesSource::Base { generators, horizon } => {
                Some((0..generators as u64).map(|a| base_names(a, horizon)).collect())
            }
            NamesSource::Extended { generators, horizon } => {
                let tower = build_tower(generators, horizon)?;
                Some((0..generators).map(|a| extended_names(&tower, a)).collect())
            }
            NamesSource::Explicit { .. } => None,
        })
    }
}

/// A condition `x_ξ` with its tuple `Γ_ξ` and optional event `E_ξ`
/// (taken to be `x_ξ` when absent).
#[derive(Clone, Debug, PartialEq)]
pub struct Condition {
    pub x: ClopenSet,
    pub gamma: BTreeSet<usize>,
    pub e: Option<ClopenSet>,
}

impl Condition {
    pub fn new(x: ClopenSet, gamma: impl IntoIterator<Item = usize>) -> Self {
        Condition {
            x,
            gamma: gamma.into_iter().collect(),
            e: None,
        }
    }

    pub fn event(&self) -> &ClopenSet {
        self.e.as_ref().unwrap_or(&self.x)
    }
}

/// Names, conditions with tuples, a cut `k` and the weight bounding the
/// name overlaps.
#[derive(Clone, Debug)]
pub struct SouslinInstance {
    source: NamesSource,
    names: Vec<(RandomSubsetName, RandomSubsetName)>,
    pub conditions: Vec<Condition>,
    pub cut: usize,
    pub weight: WeightSequence,
}

impl SouslinInstance {
    pub fn new(source: NamesSource, conditions: Vec<Condition>, cut: usize, weight: WeightSequence) -> Result<Self> {
        let names = source
            .build()?
            .ok_or_else(|| Error::Config("explicit names need `with_names`".into()))?;
        Self::assemble(source, names, conditions, cut, weight)
    }

    /// An instance over explicitly given names, all of one horizon.
    pub fn with_names(
        names: Vec<(RandomSubsetName, RandomSubsetName)>,
        conditions: Vec<Condition>,
        cut: usize,
        weight: WeightSequence,
    ) -> Result<Self> {
        let horizon = names.first().map_or(0, |(a, _)| a.horizon());
        let source = NamesSource::Explicit {
            generators: names.len(),
            horizon,
        };
        Self::assemble(source, names, conditions, cut, weight)
    }

    fn assemble(
        source: NamesSource,
        names: Vec<(RandomSubsetName, RandomSubsetName)>,
        conditions: Vec<Condition>,
        cut: usize,
        weight: WeightSequence,
    ) -> Result<Self> {
        let horizon = source.horizon();
        if names.iter().any(|(a, b)| a.horizon() != horizon || b.horizon() != horizon) {
            return Err(Error::Config("all names must share one horizon".into()));
        }
        for (xi, c) in conditions.iter().enumerate() {
            if let Some(&alpha) = c.gamma.iter().find(|&&a| a >= names.len()) {
                return Err(Error::Config(format!("condition {xi} uses unknown generator {alpha}")));
            }
        }
        Ok(SouslinInstance {
            source,
            names,
            conditions,
            cut,
            weight,
        })
    }

    pub fn source(&self) -> NamesSource {
        self.source
    }

    pub fn names(&self) -> &[(RandomSubsetName, RandomSubsetName)] {
        &self.names
    }

    pub fn horizon(&self) -> usize {
        self.source.horizon()
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    /// Checks that every condition has positive measure and misses
    /// `⟦ȧ_α ∩ ḃ_β ∖ k ≠ ∅⟧` for all `α, β ∈ Γ_ξ`, up to the horizon.
    pub fn validate(&self) -> Result<()> {
        for (xi, c) in self.conditions.iter().enumerate() {
            if c.x.is_empty() {
                return Err(Error::InvariantViolated {
                    xi,
                    detail: "condition has measure zero".into(),
                });
            }
            for &alpha in &c.gamma {
                for &beta in &c.gamma {
                    let (a, b) = (&self.names[alpha].0, &self.names[beta].1);
                    for n in self.cut..self.horizon() {
                        if !a.events()[n].meet(&b.events()[n]).meet(&c.x).is_empty() {
                            return Err(Error::InvariantViolated {
                                xi,
                                detail: format!("a_{alpha} and b_{beta} meet at n = {n}"),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }
}

/// Text format, one item per line:
///
/// ```text
/// names = base 64 128
/// weight = inverse-square
/// cut = 2
/// condition 0 : gamma = 3 17 ; x = {(3.0=1)}
/// ```
///
/// With `names = explicit A M`, lines `a α n = {…}` and `b α n = {…}` give
/// the events; unlisted events are empty. `#` starts a comment.
impl fmt::Display for SouslinInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (kind, a, m) = match self.source {
            NamesSource::Base { generators, horizon } => ("base", generators, horizon),
            NamesSource::Extended { generators, horizon } => ("extended", generators, horizon),
            NamesSource::Explicit { generators, horizon } => ("explicit", generators, horizon),
        };
        writeln!(f, "names = {kind} {a} {m}")?;
        writeln!(f, "weight = {}", self.weight)?;
        writeln!(f, "cut = {}", self.cut)?;
        if kind == "explicit" {
            for (alpha, (an, bn)) in self.names.iter().enumerate() {
                for (label, name) in [("a", an), ("b", bn)] {
                    for (n, e) in name.events().iter().enumerate() {
                        if !e.is_empty() {
                            writeln!(f, "{label} {alpha} {n} = {e}")?;
                        }
                    }
                }
            }
        }
        for (xi, c) in self.conditions.iter().enumerate() {
            let gamma: Vec<String> = c.gamma.iter().map(|g| g.to_string()).collect();
            write!(f, "condition {xi} : gamma = {} ; x = {}", gamma.join(" "), c.x)?;
            if let Some(e) = &c.e {
                write!(f, " ; e = {e}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

impl FromStr for SouslinInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut source = None;
        let mut weight = WeightSequence::InverseSquare;
        let mut cut = 0;
        let mut conditions = Vec::new();
        let mut listed: Vec<(bool, usize, usize, ClopenSet)> = Vec::new();

        for raw in text.lines() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || Error::Parse(ParseError::new("instance line", line));
            let (key, value) = line.split_once('=').ok_or_else(bad)?;
            let words: Vec<&str> = key.split_whitespace().collect();
            match words.as_slice() {
                ["names"] => {
                    let parts: Vec<&str> = value.split_whitespace().collect();
                    let [kind, a, m] = parts.as_slice() else { return Err(bad()) };
                    let generators = a.parse().map_err(|_| bad())?;
                    let horizon = m.parse().map_err(|_| bad())?;
                    source = Some(match *kind {
                        "base" => NamesSource::Base { generators, horizon },
                        "extended" => NamesSource::Extended { generators, horizon },
                        "explicit" => NamesSource::Explicit { generators, horizon },
                        _ => return Err(bad()),
                    });
                }
                ["weight"] => weight = value.trim().parse().map_err(|_| bad())?,
                ["cut"] => cut = value.trim().parse().map_err(|_| bad())?,
                [side @ ("a" | "b"), alpha, n] => {
                    let alpha = alpha.parse().map_err(|_| bad())?;
                    let n = n.parse().map_err(|_| bad())?;
                    listed.push((*side == "b", alpha, n, value.parse()?));
                }
                ["condition", xi, ":", "gamma"] => {
                    if xi.parse::<usize>().ok() != Some(conditions.len()) {
                        return Err(bad());
                    }
                    conditions.push(parse_condition(value).ok_or_else(bad)??);
                }
                _ => return Err(bad()),
            }
        }

        let source = source.ok_or_else(|| Error::Config("missing `names = …` line".into()))?;
        match source {
            NamesSource::Explicit { generators, horizon } => {
                let mut events = vec![[vec![ClopenSet::empty(); horizon], vec![ClopenSet::empty(); horizon]]; generators];
                for (side, alpha, n, e) in listed {
                    if alpha >= generators || n >= horizon {
                        return Err(Error::Config(format!("event ({alpha}, {n}) outside the declared names")));
                    }
                    events[alpha][usize::from(side)][n] = e;
                }
                let names = events
                    .into_iter()
                    .map(|[a, b]| (RandomSubsetName::new(a), RandomSubsetName::new(b)))
                    .collect();
                let mut inst = SouslinInstance::with_names(names, conditions, cut, weight)?;
                inst.source = source;
                Ok(inst)
            }
            _ if !listed.is_empty() => Err(Error::Config("event lines need `names = explicit`".into())),
            _ => SouslinInstance::new(source, conditions, cut, weight),
        }
    }
}

/// `3 17 ; x = {…} [; e = {…}]` after the `gamma =`.
fn parse_condition(value: &str) -> Option<Result<Condition>> {
    let mut parts = value.split(';');
    let gamma: BTreeSet<usize> = parts
        .next()?
        .split_whitespace()
        .map(|g| g.parse().ok())
        .collect::<Option<_>>()?;
    let x = parts.next()?.trim().strip_prefix('x')?.trim_start().strip_prefix('=')?;
    let e = match parts.next() {
        Some(e) => Some(e.trim().strip_prefix('e')?.trim_start().strip_prefix('=')?),
        None => None,
    };
    if parts.next().is_some() {
        return None;
    }
    let build = || -> Result<Condition> {
        Ok(Condition {
            x: x.parse()?,
            gamma,
            e: e.map(str::parse).transpose()?,
        })
    };
    Some(build())
}

/// Sets coordinates of `x` so that `[x]` misses every cylinder of `event`;
/// false if some cylinder cannot be avoided.
pub(crate) fn avoid(x: &mut PartialAssignment, event: &ClopenSet) -> bool {
    for s in event.cylinders() {
        if !x.compatible(s) {
            continue;
        }
        match s.iter().find(|&(c, _)| !x.contains(c)) {
            Some((c, bit)) => {
                x.set(c, !bit);
            }
            None => return false,
        }
    }
    true
}
