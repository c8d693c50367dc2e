use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use super::blocks::{base_assignment, base_names};
use crate::report::{tag, Check, Report, Tally};
use super::tower::Tower;
use crate::cube::ClopenSet;
use crate::gapcore::RandomSubsetName;

/// `⟦n ∈ â_α⟧ = ⋁_{ξ∈T_α(n)} [s_ξ(n)]` and likewise `b̂_α` with `t_ξ(n)`.
pub fn extended_names(tower: &Tower, alpha: usize) -> (RandomSubsetName, RandomSubsetName) {
    let events = |bit| {
        RandomSubsetName::new(
            (0..tower.horizon())
                .map(|n| extended_event(tower, alpha, n, bit))
                .collect(),
        )
    };
    (events(false), events(true))
}

fn extended_event(tower: &Tower, alpha: usize, n: usize, bit: bool) -> ClopenSet {
    ClopenSet::from_cylinders(
        tower
            .get(alpha, n)
            .iter()
            .map(|&xi| base_assignment(xi as u64, n as u64, bit)),
    )
}

fn int(x: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// The chain for one `(α, β, n)`:
/// `μ(â_α ∧ b̂_β) ≤ μ(â_α)·μ(b̂_β) ≤ (∛(n+1)/(n+2))² `, and
/// `μ(â_α ∧ b̂_β) < (n+1)^(−4/3)`, all by integer powers.
pub fn extended_gap_checks(tower: &Tower, alpha: usize, beta: usize, n: usize) -> Vec<Check> {
    let a = extended_event(tower, alpha, n, false);
    let b = extended_event(tower, beta, n, true);
    let meet = a.meet(&b).measure();
    let product = a.measure() * b.measure();
    let subject = format!("a_{alpha}({n}) ∧ b_{beta}({n})");
    let (mq, pq) = (meet.to_rational(), product.to_rational());
    let correlation = mq <= pq;
    // p³(n+2)⁶ ≤ (n+1)²
    let union = pq.pow(3) * int(n + 2).pow(6) <= int(n + 1).pow(2);
    // μ³(n+1)⁴ < 1
    let gap = mq.pow(3) * int(n + 1).pow(4) < BigRational::one();
    vec![
        Check::new(tag::EXTENDED_GAP, subject.clone(), &meet, "<=", &product, correlation),
        Check::new(
            tag::EXTENDED_GAP,
            subject.clone(),
            &product,
            "<=",
            format!("(cbrt({})/{})^2", n + 1, n + 2),
            union,
        ),
        Check::new(tag::EXTENDED_GAP, subject, &meet, "<", format!("({})^(-4/3)", n + 1), gap),
    ]
}

/// The chain above for every `α, β < generators` and `n < horizon`, plus
/// `ċ_α ⊆ â_α` and `ḋ_α ⊆ b̂_α` per `n`. Passing cases are summarized.
pub fn verify_extended_gap(tower: &Tower) -> Report {
    let gens = tower.generators();
    let horizon = tower.horizon();
    let mut report = Report::new();

    let mut contains = Tally::new(tag::EXTENDS_BASE, "<=");
    for alpha in 0..gens {
        let (c, d) = base_names(alpha as u64, horizon);
        let (a, b) = extended_names(tower, alpha);
        for n in 0..horizon {
            let ok = c.events()[n].is_subset_of(&a.events()[n]) && d.events()[n].is_subset_of(&b.events()[n]);
            contains.record(ok, || (format!("alpha={alpha}, n={n}"), "c, d".into(), "a, b".into()));
        }
    }
    contains.finish(&mut report, &format!("alpha < {gens}, n < {horizon}"));

    let cases: Vec<(usize, usize, usize)> = (0..gens)
        .flat_map(|a| (0..gens).flat_map(move |b| (0..horizon).map(move |n| (a, b, n))))
        .collect();
    let tally = cases
        .par_iter()
        .fold(
            || Tally::new(tag::EXTENDED_GAP, "chain"),
            |mut t, &(a, b, n)| {
                let checks = extended_gap_checks(tower, a, b, n);
                let ok = checks.iter().all(|c| c.pass);
                t.record(ok, || {
                    let bad = checks.iter().find(|c| !c.pass).expect("a failing link");
                    (bad.subject.clone(), bad.lhs.clone(), format!("{} {}", bad.relation, bad.rhs))
                });
                t
            },
        )
        .reduce(
            || Tally::new(tag::EXTENDED_GAP, "chain"),
            |mut x, y| {
                x.merge(y);
                x
            },
        );
    tally.finish(&mut report, &format!("alpha, beta < {gens}, n < {horizon}"));
    report
}
