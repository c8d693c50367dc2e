use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::assignment::{Coordinate, PartialAssignment};
use super::dyadic::DyadicRational;
use crate::error::{Error, ParseError, Result};

/// Binary (and one unary) Boolean operations on clopen sets.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Meet,
    Join,
    Difference,
    /// Ignores the second operand.
    Complement,
}

/// A clopen subset of the Cantor cube, stored as a finite union of basic
/// cylinders `[s] = {z : z ⊇ s}`.
///
/// The stored list is kept sorted, free of absorbed cylinders, and with
/// sibling cylinders (differing only in the last bit) merged. It is not a
/// semantic normal form; use [`ClopenSet::canonical_cylinders`] for that.
/// Equality (`==`) is semantic.
#[derive(Clone, Debug, Default)]
pub struct ClopenSet {
    cylinders: Vec<PartialAssignment>,
}

impl ClopenSet {
    pub fn empty() -> Self {
        ClopenSet { cylinders: Vec::new() }
    }

    pub fn whole() -> Self {
        ClopenSet {
            cylinders: vec![PartialAssignment::new()],
        }
    }

    /// The basic clopen set `[s]`.
    pub fn cylinder(s: PartialAssignment) -> Self {
        ClopenSet { cylinders: vec![s] }
    }

    pub fn from_cylinders(cylinders: impl IntoIterator<Item = PartialAssignment>) -> Self {
        ClopenSet {
            cylinders: normalize(cylinders.into_iter().collect()),
        }
    }

    pub fn cylinders(&self) -> &[PartialAssignment] {
        &self.cylinders
    }

    /// Every cylinder is nonempty, so the union is empty iff there are none.
    pub fn is_empty(&self) -> bool {
        self.cylinders.is_empty()
    }

    pub fn is_whole(&self) -> bool {
        self.measure().is_one()
    }

    pub fn meet(&self, other: &ClopenSet) -> ClopenSet {
        let mut out = Vec::new();
        for s in &self.cylinders {
            for t in &other.cylinders {
                if let Some(u) = s.union(t) {
                    out.push(u);
                }
            }
        }
        ClopenSet::from_cylinders(out)
    }

    pub fn join(&self, other: &ClopenSet) -> ClopenSet {
        ClopenSet::from_cylinders(self.cylinders.iter().chain(&other.cylinders).cloned())
    }

    pub fn meet_cylinder(&self, t: &PartialAssignment) -> ClopenSet {
        ClopenSet::from_cylinders(self.cylinders.iter().filter_map(|s| s.union(t)))
    }

    /// `self ∖ other`, via the disjoint sharp product of cylinders.
    pub fn difference(&self, other: &ClopenSet) -> ClopenSet {
        let mut pieces = self.cylinders.clone();
        for d in &other.cylinders {
            pieces = pieces.iter().flat_map(|p| sharp(p, d)).collect();
            if pieces.is_empty() {
                break;
            }
        }
        ClopenSet::from_cylinders(pieces)
    }

    pub fn complement(&self) -> ClopenSet {
        ClopenSet::whole().difference(self)
    }

    pub fn symmetric_difference(&self, other: &ClopenSet) -> ClopenSet {
        self.difference(other).join(&other.difference(self))
    }

    pub fn combine(&self, other: &ClopenSet, op: BoolOp) -> ClopenSet {
        match op {
            BoolOp::Meet => self.meet(other),
            BoolOp::Join => self.join(other),
            BoolOp::Difference => self.difference(other),
            BoolOp::Complement => self.complement(),
        }
    }

    pub fn is_disjoint_from(&self, other: &ClopenSet) -> bool {
        self.cylinders
            .iter()
            .all(|s| other.cylinders.iter().all(|t| !s.compatible(t)))
    }

    /// `self ≤ other`, decided by `μ(self ∧ other) = μ(self)`.
    pub fn is_subset_of(&self, other: &ClopenSet) -> bool {
        self.meet(other).measure() == self.measure()
    }

    /// Semantic equality, decided by `μ(x △ y) = 0` without building `x △ y`.
    pub fn equivalent(&self, other: &ClopenSet) -> bool {
        if self.cylinders == other.cylinders {
            return true;
        }
        let both = self.meet(other).measure();
        let a = self.measure();
        let b = other.measure();
        a == both && b == both
    }

    /// The metric `d(x, y) = μ(x △ y)`.
    pub fn distance(&self, other: &ClopenSet) -> DyadicRational {
        let both = self.meet(other).measure();
        self.measure() + other.measure() - both.clone() - both
    }

    /// All coordinates mentioned by some stored cylinder.
    pub fn support(&self) -> BTreeSet<Coordinate> {
        self.cylinders.iter().flat_map(|s| s.domain()).collect()
    }

    /// The relativized cofactor `π_{⟨c,bit⟩}(x ∧ ⟨c,bit⟩)`: the part of `x`
    /// with `c = bit`, viewed as a set not depending on `c`.
    pub fn cofactor(&self, c: Coordinate, bit: bool) -> ClopenSet {
        ClopenSet::from_cylinders(cofactor_list(&self.cylinders, c, bit))
    }

    /// Cofactor by a whole partial assignment `t`.
    pub fn cofactor_by(&self, t: &PartialAssignment) -> ClopenSet {
        ClopenSet::from_cylinders(
            self.cylinders
                .iter()
                .filter(|s| s.compatible(t))
                .map(|s| s.without_domain_of(t)),
        )
    }

    /// The minimal set of coordinates determining `self`: those `c` whose
    /// two cofactors differ.
    pub fn determining_coords(&self) -> BTreeSet<Coordinate> {
        self.support()
            .into_iter()
            .filter(|&c| !self.cofactor(c, false).equivalent(&self.cofactor(c, true)))
            .collect()
    }

    /// Exact Haar measure.
    pub fn measure(&self) -> DyadicRational {
        match self.cylinders.len() {
            0 => DyadicRational::zero(),
            1 => DyadicRational::pow2_neg(self.cylinders[0].len() as u32),
            _ => {
                let mut memo = HashMap::new();
                measure_rec(self.cylinders.clone(), &mut memo)
            }
        }
    }

    /// `μ(self | given) = μ(self ∧ given) / μ(given)`.
    pub fn conditional(&self, given: &ClopenSet) -> Result<BigRational> {
        let denom = given.measure();
        if denom.is_zero() {
            return Err(Error::UndefinedConditional);
        }
        Ok(self.meet(given).measure().to_rational() / denom.to_rational())
    }

    /// For `x ≤ [t]`, the unique `y` determined off `dom(t)` with `x = y ∧ [t]`.
    pub fn project_below(&self, t: &PartialAssignment) -> Result<ClopenSet> {
        let below = self.cylinders.iter().all(|s| s.extends(t))
            || self.meet_cylinder(t).measure() == self.measure();
        if !below {
            return Err(Error::NotBelow(t.to_string()));
        }
        Ok(self.cofactor_by(t))
    }

    /// Returns `e' ≤ self` with `μ(e') = μ(self)/2`. An internal split over
    /// the determining coordinates is tried first; otherwise the first pool
    /// coordinate outside the support is fixed to 0.
    pub fn split_half(&self, pool: &[Coordinate]) -> Result<ClopenSet> {
        let total = self.measure();
        if total.is_zero() {
            return Err(Error::NoSplit("measure is zero".into()));
        }
        if let Some(half) = self.internal_half(&total) {
            return Ok(half);
        }
        let support = self.support();
        let fresh = pool
            .iter()
            .find(|c| !support.contains(c))
            .ok_or_else(|| Error::NoSplit("no internal split and no fresh pool coordinate".into()))?;
        Ok(self.meet_cylinder(&PartialAssignment::from_entries([(*fresh, false)])))
    }

    fn internal_half(&self, total: &DyadicRational) -> Option<ClopenSet> {
        let free: Vec<Coordinate> = self.determining_coords().into_iter().collect();
        let mut remaining = total.half();
        // Largest pieces first; dyadic masses make the greedy exact whenever
        // pieces can be split far enough.
        let mut work: BinaryHeap<(Reverse<usize>, PartialAssignment)> = self
            .canonical_cylinders()
            .into_iter()
            .map(|s| (Reverse(s.len()), s))
            .collect();
        let mut taken = Vec::new();
        while let Some((Reverse(len), piece)) = work.pop() {
            if remaining.is_zero() {
                break;
            }
            let mass = DyadicRational::pow2_neg(len as u32);
            if mass <= remaining {
                remaining = remaining - mass;
                taken.push(piece);
            } else if let Some(&c) = free.iter().find(|&&c| !piece.contains(c)) {
                for bit in [false, true] {
                    let mut half = piece.clone();
                    half.set(c, bit);
                    work.push((Reverse(len + 1), half));
                }
            }
        }
        remaining.is_zero().then(|| ClopenSet::from_cylinders(taken))
    }

    /// A semantic normal form: the leaves of the decision tree that always
    /// branches on the least coordinate the current subfunction depends on.
    /// Two equivalent sets produce identical lists.
    pub fn canonical_cylinders(&self) -> Vec<PartialAssignment> {
        let mut out = Vec::new();
        canonical_rec(self, PartialAssignment::new(), &mut out);
        out
    }

    pub fn contains_point(&self, mut point: impl FnMut(Coordinate) -> bool) -> bool {
        self.cylinders.iter().any(|s| s.satisfied_by(&mut point))
    }
}

impl PartialEq for ClopenSet {
    fn eq(&self, other: &Self) -> bool {
        self.equivalent(other)
    }
}

impl From<PartialAssignment> for ClopenSet {
    fn from(s: PartialAssignment) -> Self {
        ClopenSet::cylinder(s)
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, s) in self.cylinders.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str("}")
    }
}

impl FromStr for ClopenSet {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let bad = || ParseError::new("clopen set", s);
        let inner = s
            .trim()
            .strip_prefix('{')
            .and_then(|r| r.strip_suffix('}'))
            .ok_or_else(bad)?;
        let mut cylinders = Vec::new();
        let mut rest = inner.trim();
        while !rest.is_empty() {
            let close = rest.find(')').ok_or_else(bad)?;
            cylinders.push(rest[..=close].parse::<PartialAssignment>()?);
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(bad());
            }
        }
        Ok(ClopenSet::from_cylinders(cylinders))
    }
}

/// `[p] ∖ [d]` as a list of pairwise-disjoint cylinders.
fn sharp(p: &PartialAssignment, d: &PartialAssignment) -> Vec<PartialAssignment> {
    if !p.compatible(d) {
        return vec![p.clone()];
    }
    let mut out = Vec::new();
    let mut prefix = p.clone();
    for (c, b) in d.iter() {
        if p.contains(c) {
            continue;
        }
        let mut piece = prefix.clone();
        piece.set(c, !b);
        out.push(piece);
        prefix.set(c, b);
    }
    out
}

fn cofactor_list(cylinders: &[PartialAssignment], c: Coordinate, bit: bool) -> Vec<PartialAssignment> {
    cylinders
        .iter()
        .filter(|s| s.get(c) != Some(!bit))
        .map(|s| s.without(c))
        .collect()
}

/// Sort, dedup, drop absorbed cylinders (`[s] ⊆ [s']` when `s ⊇ s'`).
fn absorb(mut cylinders: Vec<PartialAssignment>) -> Vec<PartialAssignment> {
    cylinders.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    cylinders.dedup();
    if cylinders.first().is_some_and(|s| s.is_empty()) {
        return vec![PartialAssignment::new()];
    }
    let mut kept: Vec<PartialAssignment> = Vec::with_capacity(cylinders.len());
    for s in cylinders {
        if !kept.iter().any(|k| k.len() < s.len() && s.extends(k)) {
            kept.push(s);
        }
    }
    kept.sort();
    kept
}

fn normalize(cylinders: Vec<PartialAssignment>) -> Vec<PartialAssignment> {
    let mut current = absorb(cylinders);
    loop {
        if current.len() < 2 {
            return current;
        }
        // only cylinders over the same domain can merge
        let mut by_domain: HashMap<Vec<Coordinate>, usize> = HashMap::new();
        for s in &current {
            *by_domain.entry(s.domain().collect()).or_default() += 1;
        }
        let mut index: HashMap<(PartialAssignment, Coordinate), usize> = HashMap::new();
        let mut used = vec![false; current.len()];
        let mut merged = Vec::new();
        for (i, s) in current.iter().enumerate() {
            if by_domain[&s.domain().collect::<Vec<_>>()] < 2 {
                continue;
            }
            for (c, b) in s.iter() {
                let key = (s.without(c), c);
                match index.get(&key) {
                    Some(&j) if !used[j] && current[j].get(c) == Some(!b) => {
                        used[i] = true;
                        used[j] = true;
                        merged.push(key.0);
                        break;
                    }
                    Some(_) => {}
                    None => {
                        index.insert(key, i);
                    }
                }
            }
        }
        if merged.is_empty() {
            return current;
        }
        merged.extend(current.into_iter().zip(used).filter(|(_, u)| !u).map(|(s, _)| s));
        current = absorb(merged);
    }
}

fn measure_rec(
    cylinders: Vec<PartialAssignment>,
    memo: &mut HashMap<Vec<PartialAssignment>, DyadicRational>,
) -> DyadicRational {
    let cylinders = absorb(cylinders);
    match cylinders.len() {
        0 => return DyadicRational::zero(),
        1 => return DyadicRational::pow2_neg(cylinders[0].len() as u32),
        _ => {}
    }
    if let Some(m) = memo.get(&cylinders) {
        return m.clone();
    }
    if pairwise_disjoint(&cylinders) {
        return cylinders.iter().map(|s| DyadicRational::pow2_neg(s.len() as u32)).sum();
    }

    let components = components(&cylinders);
    let result = if components.len() > 1 {
        // Coordinate-disjoint groups are independent: μ(∪) = 1 − Π(1 − μ_i).
        let miss = components
            .into_iter()
            .map(|group| measure_rec(group, memo).complement())
            .fold(DyadicRational::one(), |acc, m| acc * m);
        miss.complement()
    } else {
        let pivot = most_frequent(&cylinders);
        let lo = measure_rec(cofactor_list(&cylinders, pivot, false), memo);
        let hi = measure_rec(cofactor_list(&cylinders, pivot, true), memo);
        (lo + hi).half()
    };
    memo.insert(cylinders, result.clone());
    result
}

fn pairwise_disjoint(cylinders: &[PartialAssignment]) -> bool {
    cylinders
        .iter()
        .enumerate()
        .all(|(i, s)| cylinders[i + 1..].iter().all(|t| !s.compatible(t)))
}

/// Groups cylinders into classes connected by shared coordinates.
fn components(cylinders: &[PartialAssignment]) -> Vec<Vec<PartialAssignment>> {
    let mut parent: Vec<usize> = (0..cylinders.len()).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    let mut owner: HashMap<Coordinate, usize> = HashMap::new();
    for (i, s) in cylinders.iter().enumerate() {
        for c in s.domain() {
            match owner.get(&c) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    if a != b {
                        parent[a] = b;
                    }
                }
                None => {
                    owner.insert(c, i);
                }
            }
        }
    }
    let mut groups: HashMap<usize, Vec<PartialAssignment>> = HashMap::new();
    for (i, s) in cylinders.iter().enumerate() {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(s.clone());
    }
    let mut out: Vec<_> = groups.into_values().collect();
    out.sort();
    out
}

fn most_frequent(cylinders: &[PartialAssignment]) -> Coordinate {
    let mut counts: HashMap<Coordinate, usize> = HashMap::new();
    for c in cylinders.iter().flat_map(|s| s.domain()) {
        *counts.entry(c).or_default() += 1;
    }
    counts
        .into_iter()
        .max_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)))
        .map(|(c, _)| c)
        .expect("nonempty cylinders")
}

fn canonical_rec(f: &ClopenSet, path: PartialAssignment, out: &mut Vec<PartialAssignment>) {
    if f.is_empty() {
        return;
    }
    if f.is_whole() {
        out.push(path);
        return;
    }
    if let [s] = f.cylinders() {
        // every branch off `s` is empty
        out.push(path.union(s).expect("cofactors avoid the path"));
        return;
    }
    let split = f
        .support()
        .into_iter()
        .find(|&c| !f.cofactor(c, false).equivalent(&f.cofactor(c, true)))
        .expect("a non-constant clopen set depends on some coordinate");
    for bit in [false, true] {
        let mut next = path.clone();
        next.set(split, bit);
        canonical_rec(&f.cofactor(split, bit), next, out);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn c(b: u64, o: u64) -> Coordinate {
        Coordinate::new(b, o)
    }

    fn pa(entries: &[((u64, u64), u8)]) -> PartialAssignment {
        PartialAssignment::from_entries(entries.iter().map(|&((b, o), v)| (c(b, o), v == 1)))
    }

    fn cyl(entries: &[((u64, u64), u8)]) -> ClopenSet {
        ClopenSet::cylinder(pa(entries))
    }

    fn d(n: i64, e: u32) -> DyadicRational {
        DyadicRational::new(n, e)
    }

    #[test]
    fn cylinder_measures() {
        assert_eq!(ClopenSet::whole().measure(), d(1, 0));
        assert_eq!(cyl(&[((0, 0), 0)]).measure(), d(1, 1));
        assert_eq!(cyl(&[((0, 0), 0), ((0, 5), 1)]).measure(), d(1, 2));
        assert_eq!(ClopenSet::empty().measure(), d(0, 0));
    }

    #[test]
    fn boolean_operation_examples() {
        let s = cyl(&[((0, 0), 0)]);
        let t = cyl(&[((0, 0), 1)]);
        assert!(s.meet(&t).is_empty());

        let u = cyl(&[((0, 1), 0)]);
        assert_eq!(s.join(&u).measure(), d(3, 2));

        let two = cyl(&[((0, 0), 0), ((0, 1), 0)]);
        assert_eq!(two.complement().measure(), d(3, 2));
        assert_eq!(two.combine(&ClopenSet::empty(), BoolOp::Complement).measure(), d(3, 2));
    }

    #[test]
    fn exhaustive_partition_has_measure_one() {
        let coords = [c(0, 0), c(1, 3), c(4, 1)];
        let all: Vec<_> = (0..8u8)
            .map(|mask| {
                PartialAssignment::from_entries(
                    coords.iter().enumerate().map(|(i, &k)| (k, mask >> i & 1 == 1)),
                )
            })
            .collect();
        let x = ClopenSet::from_cylinders(all);
        assert_eq!(x.measure(), DyadicRational::one());
        assert!(x.is_whole());
        // sibling merging collapses the full partition to the whole space
        assert_eq!(x.cylinders(), &[PartialAssignment::new()]);
    }

    #[test]
    fn conditional_examples() {
        let y = cyl(&[((0, 0), 0)]);
        assert!(y.conditional(&y).unwrap().is_one());

        let x = cyl(&[((1, 0), 1), ((1, 1), 1)]);
        assert_eq!(x.conditional(&y).unwrap(), x.measure().to_rational());

        let x = cyl(&[((0, 0), 0), ((0, 1), 0)]);
        assert_eq!(
            x.conditional(&y).unwrap(),
            BigRational::new(1.into(), 2.into())
        );
        assert_eq!(x.conditional(&ClopenSet::empty()), Err(Error::UndefinedConditional));
    }

    #[test]
    fn determining_coordinates() {
        let s = pa(&[((0, 0), 1), ((2, 7), 0)]);
        assert_eq!(ClopenSet::cylinder(s.clone()).determining_coords(), s.domain_set());

        let x = ClopenSet::from_cylinders([pa(&[((0, 0), 0), ((0, 1), 0)]), pa(&[((0, 0), 1), ((0, 1), 0)])]);
        assert_eq!(x.determining_coords(), BTreeSet::from([c(0, 1)]));
        assert!(ClopenSet::whole().determining_coords().is_empty());

        // overlapping cylinders whose stored form still mentions a redundant coordinate
        let y = ClopenSet::from_cylinders([pa(&[((0, 0), 0)]), pa(&[((0, 0), 1), ((0, 1), 1)]), pa(&[((0, 1), 1)])]);
        assert_eq!(y.determining_coords(), BTreeSet::from([c(0, 0), c(0, 1)]));
    }

    #[test]
    fn project_below_examples() {
        let t = pa(&[((0, 0), 1)]);
        let s = pa(&[((0, 0), 1), ((3, 2), 0)]);
        assert_eq!(
            ClopenSet::cylinder(s.clone()).project_below(&t).unwrap(),
            ClopenSet::cylinder(s.without_domain_of(&t))
        );
        assert!(ClopenSet::cylinder(t.clone()).project_below(&t).unwrap().is_whole());

        let y = ClopenSet::from_cylinders([pa(&[((5, 0), 1)]), pa(&[((5, 1), 0), ((5, 2), 1)])]);
        let x = y.meet_cylinder(&t);
        assert_eq!(x.project_below(&t).unwrap(), y);

        let outside = cyl(&[((1, 1), 1)]);
        assert!(matches!(outside.project_below(&t), Err(Error::NotBelow(_))));
    }

    #[test]
    fn split_half_examples() {
        let f = c(9, 0);
        let half = ClopenSet::whole().split_half(&[f]).unwrap();
        assert_eq!(half, cyl(&[((9, 0), 0)]));

        let s = pa(&[((0, 0), 1), ((0, 1), 1)]);
        let mut sf = s.clone();
        sf.set(f, false);
        assert_eq!(ClopenSet::cylinder(s).split_half(&[f]).unwrap(), ClopenSet::cylinder(sf));

        let e = cyl(&[((0, 0), 0), ((0, 1), 0)]).complement();
        assert_eq!(e.measure(), d(3, 2));
        let h = e.split_half(&[f]).unwrap();
        assert_eq!(h.measure(), d(3, 3));
        assert!(h.is_subset_of(&e));

        assert!(matches!(cyl(&[((0, 0), 0)]).split_half(&[]), Err(Error::NoSplit(_))));
        assert!(matches!(ClopenSet::empty().split_half(&[f]), Err(Error::NoSplit(_))));
    }

    #[test]
    fn internal_split_avoids_pool() {
        // two disjoint quarter cylinders: taking one halves the measure
        let e = ClopenSet::from_cylinders([
            pa(&[((0, 0), 0), ((1, 0), 1)]),
            pa(&[((0, 0), 1), ((1, 0), 0)]),
        ]);
        let h = e.split_half(&[]).unwrap();
        assert_eq!(h.measure(), d(1, 2));
        assert!(h.is_subset_of(&e));
        assert!(h.support().is_subset(&e.support()));
    }

    #[test]
    fn canonical_form_is_semantic() {
        let x = ClopenSet::from_cylinders([pa(&[((0, 0), 0), ((0, 1), 0)]), pa(&[((0, 0), 1), ((0, 1), 0)])]);
        let y = cyl(&[((0, 1), 0)]);
        assert_eq!(x.canonical_cylinders(), y.canonical_cylinders());
        let a = cyl(&[((0, 0), 1)]).join(&cyl(&[((0, 1), 1)]));
        let b = cyl(&[((0, 0), 1)]).join(&cyl(&[((0, 0), 0), ((0, 1), 1)]));
        assert_eq!(a.canonical_cylinders(), b.canonical_cylinders());
        assert_eq!(a, b);
    }

    #[test]
    fn text_round_trip() {
        let x = ClopenSet::from_cylinders([pa(&[((0, 0), 0), ((0, 5), 1)]), pa(&[((2, 1), 1)])]);
        let text = x.to_string();
        assert_eq!(text, "{(0.0=0,0.5=1),(2.1=1)}");
        let back: ClopenSet = text.parse().unwrap();
        assert_eq!(back.cylinders(), x.cylinders());
        assert!("{}".parse::<ClopenSet>().unwrap().is_empty());
        assert!("{()}".parse::<ClopenSet>().unwrap().is_whole());
        assert!("{(0.0=0".parse::<ClopenSet>().is_err());
    }
}
