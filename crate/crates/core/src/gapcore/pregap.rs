use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, ParseError, Result};

/// Labels of the two pair partitions: `K` on unordered pairs, and the cut
/// family `L^k` on ordered pairs including the diagonal.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum PartitionLabel {
    K0,
    K1,
    L0 { cut: usize },
    L1 { cut: usize },
}

/// Finite families `a_i, b_i ⊆ {0, …, horizon-1}` indexed by `i ∈ I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcretePregap {
    horizon: usize,
    entries: BTreeMap<usize, (BTreeSet<usize>, BTreeSet<usize>)>,
}

impl ConcretePregap {
    pub fn new(horizon: usize) -> Self {
        ConcretePregap {
            horizon,
            entries: BTreeMap::new(),
        }
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    /// Adds (or replaces) the pair at index `i`.
    pub fn insert(&mut self, i: usize, a: BTreeSet<usize>, b: BTreeSet<usize>) -> Result<()> {
        if let Some(&n) = a.iter().chain(&b).find(|&&n| n >= self.horizon) {
            return Err(Error::BeyondHorizon { n, horizon: self.horizon });
        }
        self.entries.insert(i, (a, b));
        Ok(())
    }

    pub fn with(mut self, i: usize, a: &[usize], b: &[usize]) -> Result<Self> {
        self.insert(i, a.iter().copied().collect(), b.iter().copied().collect())?;
        Ok(self)
    }

    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.entries.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn pair(&self, i: usize) -> Result<(&BTreeSet<usize>, &BTreeSet<usize>)> {
        self.entries
            .get(&i)
            .map(|(a, b)| (a, b))
            .ok_or(Error::UnknownIndex(i))
    }

    /// Condition ♣: `a_i ∩ b_i = ∅` for every index.
    pub fn satisfies_club(&self) -> bool {
        self.entries.values().all(|(a, b)| a.is_disjoint(b))
    }

    /// Elements of `(a_i ∩ b_j) ∪ (a_j ∩ b_i)`.
    pub fn cross_witnesses(&self, i: usize, j: usize) -> Result<BTreeSet<usize>> {
        let (ai, bi) = self.pair(i)?;
        let (aj, bj) = self.pair(j)?;
        Ok(ai.intersection(bj).chain(aj.intersection(bi)).copied().collect())
    }

    pub fn classify_k(&self, i: usize, j: usize) -> Result<PartitionLabel> {
        if i == j {
            return Err(Error::Precondition(format!("K is defined on distinct pairs, got {{{i},{i}}}")));
        }
        Ok(if self.cross_witnesses(i, j)?.is_empty() {
            PartitionLabel::K0
        } else {
            PartitionLabel::K1
        })
    }

    /// `L0` iff both cross intersections are empty above the cut.
    pub fn classify_l(&self, i: usize, j: usize, cut: usize) -> Result<PartitionLabel> {
        Ok(if self.cross_witnesses(i, j)?.range(cut..).next().is_none() {
            PartitionLabel::L0 { cut }
        } else {
            PartitionLabel::L1 { cut }
        })
    }

    /// Does every pair of `subset` carry `label`? `K` labels look at distinct
    /// pairs only; `L` labels include the diagonal.
    pub fn is_homogeneous(&self, subset: &BTreeSet<usize>, label: PartitionLabel) -> Result<bool> {
        for &i in subset {
            self.pair(i)?;
        }
        let items: Vec<usize> = subset.iter().copied().collect();
        for (x, &i) in items.iter().enumerate() {
            for &j in &items[x..] {
                let got = match label {
                    PartitionLabel::K0 | PartitionLabel::K1 if i == j => continue,
                    PartitionLabel::K0 | PartitionLabel::K1 => self.classify_k(i, j)?,
                    PartitionLabel::L0 { cut } | PartitionLabel::L1 { cut } => self.classify_l(i, j, cut)?,
                };
                if got != label {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Least `k` such that `subset² ⊆ L0^k`.
    pub fn min_cut(&self, subset: &BTreeSet<usize>) -> Result<usize> {
        let mut cut = 0;
        let items: Vec<usize> = subset.iter().copied().collect();
        for (x, &i) in items.iter().enumerate() {
            for &j in &items[x..] {
                if let Some(&w) = self.cross_witnesses(i, j)?.last() {
                    cut = cut.max(w + 1);
                }
            }
        }
        Ok(cut)
    }
}

/// Does `d` interpolate every pair of `family` above the cut:
/// `a ∖ k ⊆ d` and `(b ∖ k) ∩ d = ∅`?
pub fn interpolates_mod_k(d: &BTreeSet<usize>, family: &[(BTreeSet<usize>, BTreeSet<usize>)], cut: usize) -> bool {
    family.iter().all(|(a, b)| {
        a.range(cut..).all(|n| d.contains(n)) && b.range(cut..).all(|n| !d.contains(n))
    })
}

fn format_set(f: &mut fmt::Formatter<'_>, s: &BTreeSet<usize>) -> fmt::Result {
    f.write_str("{")?;
    for (i, n) in s.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{n}")?;
    }
    f.write_str("}")
}

fn parse_set(s: &str) -> std::result::Result<BTreeSet<usize>, ParseError> {
    let bad = || ParseError::new("finite set", s);
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(bad)?;
    inner
        .split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(|x| x.parse().map_err(|_| bad()))
        .collect()
}

/// One record per line: `i : a = {…} ; b = {…}`. An optional
/// `horizon = M` line fixes the horizon; otherwise it is one past the
/// largest element. `#` starts a comment.
impl FromStr for ConcretePregap {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut horizon = None;
        let mut records = Vec::new();
        for line in text.lines() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = || ParseError::new("pregap record", line);
            if let Some(rest) = line.strip_prefix("horizon") {
                let value = rest.trim().strip_prefix('=').ok_or_else(bad)?;
                horizon = Some(value.trim().parse::<usize>().map_err(|_| bad())?);
                continue;
            }
            let (index, body) = line.split_once(':').ok_or_else(bad)?;
            let index: usize = index.trim().parse().map_err(|_| bad())?;
            let (a, b) = body.split_once(';').ok_or_else(bad)?;
            let a = a.trim().strip_prefix('a').and_then(|r| r.trim().strip_prefix('=')).ok_or_else(bad)?;
            let b = b.trim().strip_prefix('b').and_then(|r| r.trim().strip_prefix('=')).ok_or_else(bad)?;
            records.push((index, parse_set(a)?, parse_set(b)?));
        }
        let horizon = horizon.unwrap_or_else(|| {
            records
                .iter()
                .flat_map(|(_, a, b)| a.iter().chain(b))
                .max()
                .map_or(0, |m| m + 1)
        });
        let mut pregap = ConcretePregap::new(horizon);
        for (i, a, b) in records {
            pregap.insert(i, a, b)?;
        }
        Ok(pregap)
    }
}

impl fmt::Display for ConcretePregap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "horizon = {}", self.horizon)?;
        for (i, (a, b)) in &self.entries {
            write!(f, "{i} : a = ")?;
            format_set(f, a)?;
            f.write_str(" ; b = ")?;
            format_set(f, b)?;
            writeln!(f)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn classify_k_examples() {
        let p = ConcretePregap::new(10).with(0, &[0], &[1]).unwrap().with(1, &[2], &[3]).unwrap();
        assert_eq!(p.classify_k(0, 1).unwrap(), PartitionLabel::K0);

        let p = ConcretePregap::new(10).with(0, &[0], &[]).unwrap().with(1, &[], &[0]).unwrap();
        assert_eq!(p.classify_k(0, 1).unwrap(), PartitionLabel::K1);

        let p = ConcretePregap::new(10).with(0, &[0, 4], &[2]).unwrap().with(1, &[1], &[4]).unwrap();
        assert_eq!(p.classify_k(0, 1).unwrap(), PartitionLabel::K1);
        assert_eq!(p.cross_witnesses(0, 1).unwrap(), set(&[4]));

        assert_eq!(p.classify_k(0, 7), Err(Error::UnknownIndex(7)));
        assert!(p.classify_k(0, 0).is_err());
    }

    #[test]
    fn classify_l_examples() {
        let p = ConcretePregap::new(10).with(0, &[0], &[]).unwrap().with(1, &[], &[0]).unwrap();
        assert_eq!(p.classify_l(0, 1, 1).unwrap(), PartitionLabel::L0 { cut: 1 });
        assert_eq!(p.classify_l(0, 1, 0).unwrap(), PartitionLabel::L1 { cut: 0 });
        for k in 0..4 {
            assert_eq!(p.classify_l(0, 0, k).unwrap(), PartitionLabel::L0 { cut: k });
        }
    }

    #[test]
    fn homogeneity_examples() {
        let p = ConcretePregap::new(12)
            .with(0, &[0], &[1])
            .unwrap()
            .with(1, &[2], &[3])
            .unwrap()
            .with(2, &[4], &[5])
            .unwrap()
            .with(3, &[1], &[0])
            .unwrap();
        assert!(p.is_homogeneous(&set(&[0]), PartitionLabel::L0 { cut: 0 }).unwrap());
        assert!(!p.is_homogeneous(&set(&[0, 3]), PartitionLabel::K0).unwrap());
        assert!(p.is_homogeneous(&set(&[0, 1, 2]), PartitionLabel::K0).unwrap());
        assert!(p.is_homogeneous(&set(&[0, 1, 2]), PartitionLabel::L0 { cut: 0 }).unwrap());
        assert!(p.is_homogeneous(&set(&[0, 3]), PartitionLabel::K1).unwrap());
    }

    #[test]
    fn min_cut_examples() {
        let p = ConcretePregap::new(12).with(0, &[0], &[1]).unwrap().with(1, &[2], &[3]).unwrap();
        assert_eq!(p.min_cut(&set(&[0, 1])).unwrap(), 0);

        let p = ConcretePregap::new(12).with(0, &[5], &[]).unwrap().with(1, &[], &[5]).unwrap();
        assert_eq!(p.min_cut(&set(&[0, 1])).unwrap(), 6);

        let p = ConcretePregap::new(12)
            .with(0, &[2], &[])
            .unwrap()
            .with(1, &[], &[2])
            .unwrap()
            .with(2, &[7], &[])
            .unwrap()
            .with(3, &[], &[7])
            .unwrap();
        assert_eq!(p.min_cut(&set(&[0, 1, 2, 3])).unwrap(), 8);
    }

    #[test]
    fn interpolation_examples() {
        assert!(interpolates_mod_k(&set(&[]), &[], 3));
        let fam = vec![(set(&[0, 5]), set(&[1]))];
        assert!(!interpolates_mod_k(&set(&[]), &fam, 3));
        assert!(interpolates_mod_k(&set(&[]), &fam, 6));
        let fam = vec![(set(&[0, 5]), set(&[1, 6])), (set(&[7]), set(&[2]))];
        let d: BTreeSet<usize> = fam.iter().flat_map(|(a, _)| a.iter().copied()).collect();
        assert!(interpolates_mod_k(&d, &fam, 0));
    }

    #[test]
    fn horizon_enforced() {
        assert_eq!(
            ConcretePregap::new(3).with(0, &[3], &[]),
            Err(Error::BeyondHorizon { n: 3, horizon: 3 })
        );
    }

    #[test]
    fn text_format() {
        let text = "# sample\nhorizon = 8\n0 : a = {0,4} ; b = {2}\n1 : a = {1} ; b = {4}\n";
        let p: ConcretePregap = text.parse().unwrap();
        assert_eq!(p.horizon(), 8);
        assert_eq!(p.classify_k(0, 1).unwrap(), PartitionLabel::K1);
        let again: ConcretePregap = p.to_string().parse().unwrap();
        assert_eq!(again, p);

        let inferred: ConcretePregap = "3 : a = {} ; b = {5}".parse().unwrap();
        assert_eq!(inferred.horizon(), 6);
        assert!("0 : a = {1}".parse::<ConcretePregap>().is_err());
    }
}
