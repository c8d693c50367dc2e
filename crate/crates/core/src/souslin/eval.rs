use std::collections::BTreeSet;

use rayon::prelude::*;

use super::instance::SouslinInstance;
use crate::cube::{ClopenSet, DyadicRational, PartialAssignment};
use crate::error::{Error, Result};
use crate::gapcore::RandomSubsetName;

/// Exact evaluation of a pair of conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairEvaluation {
    /// `x_ξ ∧ x_η ≠ 0`.
    pub meets: bool,
    /// `E_ξ ∧ E_η ≠ 0`.
    pub events_meet: bool,
    /// Measure of `x_ξ ∧ x_η` minus the forbidden event.
    pub residual: DyadicRational,
    /// `meets` and a nonzero residual.
    pub compatible: bool,
}

/// Cylinders of `⋁_{α∈Γ, β∈Δ} ⋁_{k≤n<M} (a_α(n) ∧ b_β(n)) ∨ (a_β(n) ∧ b_α(n))`,
/// unnormalized.
pub(crate) fn forbidden_cylinders(
    names: &[(RandomSubsetName, RandomSubsetName)],
    gamma: &BTreeSet<usize>,
    delta: &BTreeSet<usize>,
    from: usize,
    to: usize,
) -> Vec<PartialAssignment> {
    let mut out = Vec::new();
    let mut push = |a: &ClopenSet, b: &ClopenSet| {
        for s in a.cylinders() {
            for t in b.cylinders() {
                if let Some(u) = s.union(t) {
                    out.push(u);
                }
            }
        }
    };
    for &alpha in gamma {
        for &beta in delta {
            for n in from..to {
                push(&names[alpha].0.events()[n], &names[beta].1.events()[n]);
                push(&names[beta].0.events()[n], &names[alpha].1.events()[n]);
            }
        }
    }
    out
}

/// `μ(base ∖ ⋁ removed)`, summing over disjoint cylinders `u` of `base` the
/// mass `2^(−|u|) · (1 − μ(removed | [u]))`. Only the cylinders of
/// `removed` compatible with `u` are ever combined.
pub fn measure_outside(base: &ClopenSet, removed: &[PartialAssignment]) -> DyadicRational {
    base.canonical_cylinders()
        .par_iter()
        .map(|u| {
            let below = ClopenSet::from_cylinders(
                removed.iter().filter(|s| s.compatible(u)).map(|s| s.without_domain_of(u)),
            );
            DyadicRational::pow2_neg(u.len() as u32) * below.measure().complement()
        })
        .reduce(DyadicRational::zero, |a, b| a + b)
}

/// The residual event `x_ξ ∧ x_η ∧ ¬forbidden` at the instance horizon.
pub fn eval_pair(instance: &SouslinInstance, xi: usize, eta: usize) -> Result<PairEvaluation> {
    let get = |i: usize| instance.conditions.get(i).ok_or(Error::UnknownIndex(i));
    let (p, q) = (get(xi)?, get(eta)?);
    if xi == eta {
        return Err(Error::Precondition("a pair needs two distinct conditions".into()));
    }
    let base = p.x.meet(&q.x);
    let events_meet = !p.event().is_disjoint_from(q.event());
    if base.is_empty() {
        return Ok(PairEvaluation {
            meets: false,
            events_meet,
            residual: DyadicRational::zero(),
            compatible: false,
        });
    }
    let removed = forbidden_cylinders(instance.names(), &p.gamma, &q.gamma, instance.cut, instance.horizon());
    let residual = measure_outside(&base, &removed);
    Ok(PairEvaluation {
        meets: true,
        events_meet,
        compatible: !residual.is_zero(),
        residual,
    })
}

/// First pair `ξ < η` in lexicographic order that is compatible.
pub fn find_pair_bruteforce(instance: &SouslinInstance) -> Result<Option<(usize, usize)>> {
    instance.validate()?;
    let n = instance.len();
    for xi in 0..n {
        let found = (xi + 1..n)
            .into_par_iter()
            .map(|eta| eval_pair(instance, xi, eta).map(|e| e.compatible))
            .collect::<Result<Vec<bool>>>()?
            .iter()
            .position(|&c| c);
        if let Some(offset) = found {
            return Ok(Some((xi, xi + 1 + offset)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construction::WeightSequence;
    use crate::cube::Coordinate;
    use crate::souslin::{Condition, NamesSource};

    fn bit(block: u64, offset: u64, v: bool) -> PartialAssignment {
        PartialAssignment::from_entries([(Coordinate::new(block, offset), v)])
    }

    fn instance(conds: Vec<Condition>) -> SouslinInstance {
        let source = NamesSource::Base { generators: 4, horizon: 16 };
        SouslinInstance::new(source, conds, 0, WeightSequence::InverseSquare).unwrap()
    }

    #[test]
    fn empty_tuples_keep_the_overlap() {
        let x = ClopenSet::cylinder(bit(99, 0, true));
        let y = ClopenSet::from_cylinders([bit(99, 1, true), bit(99, 2, true)]);
        let inst = instance(vec![Condition::new(x.clone(), []), Condition::new(y.clone(), [])]);
        let e = eval_pair(&inst, 0, 1).unwrap();
        assert!(e.compatible && e.meets && e.events_meet);
        assert_eq!(e.residual, x.meet(&y).measure());
        assert_eq!(find_pair_bruteforce(&inst).unwrap(), Some((0, 1)));
    }

    #[test]
    fn disjoint_conditions_never_pair() {
        let conds = (0..4u64)
            .map(|i| Condition::new(ClopenSet::cylinder(PartialAssignment::from_entries([
                (Coordinate::new(99, 0), i & 1 == 1),
                (Coordinate::new(99, 1), i & 2 == 2),
            ])), []))
            .collect();
        let inst = instance(conds);
        assert!(!eval_pair(&inst, 0, 3).unwrap().compatible);
        assert_eq!(find_pair_bruteforce(&inst).unwrap(), None);
    }

    #[test]
    fn forbidden_event_is_subtracted() {
        // Γ = {0} and {1}: the forbidden event covers c_0(n) ∧ d_1(n) and c_1(n) ∧ d_0(n)
        let inst = instance(vec![Condition::new(ClopenSet::whole(), [0]), Condition::new(ClopenSet::whole(), [1])]);
        let e = eval_pair(&inst, 0, 1).unwrap();
        let bad = ClopenSet::from_cylinders(forbidden_cylinders(
            inst.names(),
            &[0].into(),
            &[1].into(),
            0,
            16,
        ));
        assert_eq!(e.residual, bad.measure().complement());
        assert!(e.compatible);
        assert!(matches!(eval_pair(&inst, 0, 0), Err(Error::Precondition(_))));
        assert!(matches!(eval_pair(&inst, 0, 7), Err(Error::UnknownIndex(7))));
    }

    #[test]
    fn bruteforce_rejects_invalid_instance() {
        let inst = instance(vec![Condition::new(ClopenSet::whole(), [0, 1])]);
        assert!(matches!(find_pair_bruteforce(&inst), Err(Error::InvariantViolated { xi: 0, .. })));
    }

    #[test]
    fn measure_outside_matches_difference() {
        let base = ClopenSet::from_cylinders([bit(0, 0, true), bit(0, 1, true)]);
        let removed = vec![bit(0, 2, true), PartialAssignment::from_entries([
            (Coordinate::new(0, 0), true),
            (Coordinate::new(0, 3), false),
        ])];
        let direct = base.difference(&ClopenSet::from_cylinders(removed.clone())).measure();
        assert_eq!(measure_outside(&base, &removed), direct);
    }
}
