use std::collections::BTreeSet;

use num_rational::BigRational;
use serde::Serialize;

use super::gillis::gillis_extract;
use super::Delta;
use crate::cube::{format_rational, ClopenSet, Coordinate, DyadicRational, PartialAssignment};
use crate::error::{Error, Result};
use crate::gapcore::{delta_system, uniformize, Structure, UniformKey};

/// An event `x` paired with a cylinder condition `[s]`.
#[derive(Clone, Debug)]
pub struct IndexedEventPair {
    pub x: ClopenSet,
    pub s: PartialAssignment,
    pub tag: usize,
}

impl IndexedEventPair {
    pub fn new(x: ClopenSet, s: PartialAssignment, tag: usize) -> Self {
        IndexedEventPair { x, s, tag }
    }

    /// `μ(x | [s])`; `[s]` always has positive measure.
    pub fn conditional(&self) -> BigRational {
        self.x
            .conditional(&ClopenSet::cylinder(self.s.clone()))
            .expect("cylinders have positive measure")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageRecord {
    pub stage: &'static str,
    /// Positions into the input family.
    pub survivors: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Transcript {
    pub stages: Vec<StageRecord>,
    /// Root of the Δ-system of condition domains.
    pub gamma: Vec<String>,
    /// Common trace of the conditions on the root.
    pub t: String,
    pub m: usize,
    pub sigma: String,
    pub delta_squared: String,
}

impl Transcript {
    fn record(&mut self, stage: &'static str, survivors: &[usize]) {
        self.stages.push(StageRecord {
            stage,
            survivors: survivors.to_vec(),
        });
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionalExtraction {
    /// Positions into the input family; empty on failure.
    pub members: Vec<usize>,
    pub threshold: usize,
    /// The stage whose output fell below the threshold.
    pub exhausted_at: Option<&'static str>,
    pub transcript: Transcript,
}

impl ConditionalExtraction {
    pub fn succeeded(&self) -> bool {
        self.exhausted_at.is_none()
    }
}

/// A subfamily on which `μ(x ∧ y | [s] ∧ [t]) > δ²` for every two members.
///
/// Follows the chain-condition argument: the domains of the conditions are
/// refined to a Δ-system with root `Γ`, then to a class with constant
/// `|s ∖ Γ| = m` and `s↾Γ = t`; the events `x ∧ [s]` are carried below `[t]`
/// to the algebra on the remaining coordinates, where each has measure
/// `> δσ` with `σ = 2^(−m)`, and the Gillis extractor is run at `δσ`. Each
/// returned pair is then checked exactly in the original algebra.
pub fn conditional_extract(pairs: &[IndexedEventPair], delta: &Delta, threshold: usize) -> Result<ConditionalExtraction> {
    for (i, p) in pairs.iter().enumerate() {
        if !delta.is_exceeded_by(&p.conditional()) {
            return Err(Error::Precondition(format!(
                "pair {i} (tag {}) has conditional measure {} not above delta",
                p.tag,
                format_rational(&p.conditional())
            )));
        }
    }
    let mut transcript = Transcript {
        delta_squared: format_rational(delta.square()),
        ..Transcript::default()
    };
    let all: Vec<usize> = (0..pairs.len()).collect();
    transcript.record("input", &all);
    let fail = |stage, transcript| {
        Ok(ConditionalExtraction {
            members: Vec::new(),
            threshold,
            exhausted_at: Some(stage),
            transcript,
        })
    };
    if pairs.len() < threshold {
        return fail("input", transcript);
    }

    let domains: Vec<BTreeSet<Coordinate>> = pairs.iter().map(|p| p.s.domain_set()).collect();
    let ds = delta_system(&domains, threshold).found;
    let gamma = ds.root;
    let survivors = ds.petals;
    transcript.record("delta-system", &survivors);
    transcript.gamma = gamma.iter().map(ToString::to_string).collect();
    if survivors.len() < threshold {
        return fail("delta-system", transcript);
    }

    let structures: Vec<Structure> = survivors
        .iter()
        .map(|&i| Structure::from_assignment(pairs[i].s.clone()))
        .collect();
    let class = uniformize(
        &structures,
        &[UniformKey::SizeOffRoot(gamma.clone()), UniformKey::TraceOnRoot(gamma.clone())],
    );
    let survivors: Vec<usize> = class.into_iter().map(|k| survivors[k]).collect();
    transcript.record("uniformize", &survivors);
    if survivors.len() < threshold {
        return fail("uniformize", transcript);
    }
    let first = &pairs[survivors[0]].s;
    let t = first.restricted_to(&gamma);
    let m = first.len() - t.len();
    let sigma = DyadicRational::pow2_neg(m as u32);
    transcript.t = t.to_string();
    transcript.m = m;
    transcript.sigma = sigma.to_string();

    let mut projected = Vec::with_capacity(survivors.len());
    for &i in &survivors {
        let p = &pairs[i];
        let cyl = ClopenSet::cylinder(p.s.clone());
        if cyl.project_below(&t)?.measure() != sigma {
            return Err(Error::Precondition(format!("condition {} does not project to measure {sigma}", p.s)));
        }
        projected.push(p.x.meet(&cyl).project_below(&t)?);
    }
    transcript.record("project", &survivors);

    let sigma_q = sigma.to_rational();
    let found = gillis_extract(&projected, &delta.scaled(&sigma_q), threshold)?;
    let survivors: Vec<usize> = found.found.into_iter().map(|k| survivors[k]).collect();
    transcript.record("gillis", &survivors);
    if !found.meets_threshold {
        return fail("gillis", transcript);
    }

    let bad = survivors.iter().enumerate().find_map(|(a, &i)| {
        survivors[a + 1..]
            .iter()
            .find(|&&j| pair_conditional(&pairs[i], &pairs[j]) <= *delta.square())
            .map(|&j| (i, j))
    });
    if let Some((i, j)) = bad {
        return Err(Error::InvariantViolated {
            xi: i,
            detail: format!("extracted pair ({i}, {j}) fails the conditional bound"),
        });
    }
    transcript.record("verify", &survivors);
    Ok(ConditionalExtraction {
        members: survivors,
        threshold,
        exhausted_at: None,
        transcript,
    })
}

/// `μ(x ∧ y | [s] ∧ [t])` computed in the original algebra.
pub(crate) fn pair_conditional(p: &IndexedEventPair, q: &IndexedEventPair) -> BigRational {
    let cond = ClopenSet::cylinder(p.s.clone()).meet_cylinder(&q.s);
    p.x.meet(&q.x).conditional(&cond).expect("Δ-system conditions are compatible")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::parse_rational;

    fn c(b: u64, o: u64) -> Coordinate {
        Coordinate::new(b, o)
    }

    fn delta(s: &str) -> Delta {
        Delta::from_value(&parse_rational(s).unwrap()).unwrap()
    }

    #[test]
    fn empty_conditions_reduce_to_gillis() {
        let pairs: Vec<IndexedEventPair> = (0..6)
            .map(|b| {
                let x = ClopenSet::cylinder(PartialAssignment::from_entries([(c(b, 0), true)]));
                IndexedEventPair::new(x, PartialAssignment::new(), b as usize)
            })
            .collect();
        let got = conditional_extract(&pairs, &delta("2/5"), 2).unwrap();
        assert!(got.succeeded());
        assert_eq!(got.members.len(), 6);
        assert!(got.transcript.gamma.is_empty());
        assert_eq!(got.transcript.m, 0);
    }

    #[test]
    fn identical_pairs_kept() {
        let s = PartialAssignment::from_entries([(c(0, 0), true)]);
        let x = ClopenSet::cylinder(PartialAssignment::from_entries([(c(0, 1), true)]));
        let pairs: Vec<_> = (0..5).map(|i| IndexedEventPair::new(x.clone(), s.clone(), i)).collect();
        let got = conditional_extract(&pairs, &delta("2/5"), 5).unwrap();
        assert_eq!(got.members, vec![0, 1, 2, 3, 4]);
        assert_eq!(got.transcript.t, s.to_string());
    }

    #[test]
    fn failure_names_stage() {
        // conditions pairwise conflicting on a shared coordinate: root {0.0},
        // traces split 1 : 1, so uniformization leaves one member
        let pairs: Vec<_> = [false, true]
            .iter()
            .enumerate()
            .map(|(i, &bit)| {
                let s = PartialAssignment::from_entries([(c(0, 0), bit)]);
                IndexedEventPair::new(ClopenSet::whole(), s, i)
            })
            .collect();
        let got = conditional_extract(&pairs, &delta("1/2"), 2).unwrap();
        assert_eq!(got.exhausted_at, Some("uniformize"));
        assert!(got.members.is_empty());
    }

    #[test]
    fn projected_conditionals_match_original() {
        // the scalar correction cancels: conditionals below [t] are the same
        // computed before and after projection
        let t = PartialAssignment::from_entries([(c(0, 0), true)]);
        let s1 = PartialAssignment::from_entries([(c(0, 0), true), (c(1, 0), true)]);
        let s2 = PartialAssignment::from_entries([(c(0, 0), true), (c(2, 0), false)]);
        let x = ClopenSet::from_cylinders([
            PartialAssignment::from_entries([(c(3, 0), true)]),
            PartialAssignment::from_entries([(c(1, 0), true), (c(2, 0), false)]),
        ]);
        let cond = ClopenSet::cylinder(s1.clone()).meet_cylinder(&s2);
        let original = x.conditional(&cond).unwrap();
        let px = x.meet(&cond).project_below(&t).unwrap();
        let pc = cond.project_below(&t).unwrap();
        assert_eq!(px.conditional(&pc).unwrap(), original);
    }
}
