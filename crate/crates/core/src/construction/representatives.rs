use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::Zero;

use crate::report::{tag, Check, Report, Tally};
use crate::cube::{format_rational, Coordinate, DyadicRational};
use crate::error::{Error, Result};
use crate::gapcore::{NameEvent, RandomSubsetName};

/// First offset of the reserved coordinates, far above any block window.
pub const RESERVED_BASE: u64 = 1 << 48;

/// The reserved fresh coordinate for index `n` of `block`.
pub fn reserved_coordinate(block: u64, n: usize) -> Coordinate {
    Coordinate::new(block, RESERVED_BASE + n as u64)
}

/// Clopen approximants `ċ, ḋ` of a pair of names, disjoint at every index.
#[derive(Clone, Debug)]
pub struct Representatives {
    pub c: RandomSubsetName,
    pub d: RandomSubsetName,
    /// The fresh coordinate used to halve the overlap at `n`, if any.
    pub pool_used: Vec<Option<Coordinate>>,
    pub report: Report,
}

/// Replaces `(ȧ, ḃ)` index by index with disjoint clopen `(C_n, D_n)`.
///
/// Half of the overlap `⟦n∈ȧ∩ḃ⟧` is cut off as `E_n`; then
/// `C_n = (⟦n∈ȧ⟧ ∖ ⟦n∈ḃ⟧) ∪ E_n` and `D_n = ⟦n∈ḃ⟧ ∖ E_n ∖ C_n`, each off by
/// half the overlap, strictly below `μ(overlap) + h(n)`. The halving works
/// inside the coordinates determining the inputs when it can, and otherwise
/// fixes one coordinate from `pool(n)`; the report records which.
///
/// `h(n)` must be a certified lower bound of the weight at `n`.
pub fn continuous_representatives(
    a: &RandomSubsetName,
    b: &RandomSubsetName,
    h: &dyn Fn(usize) -> BigRational,
    pool: &dyn Fn(usize) -> Vec<Coordinate>,
) -> Result<Representatives> {
    let horizon = a.horizon().min(b.horizon());
    let mut cs = Vec::with_capacity(horizon);
    let mut ds = Vec::with_capacity(horizon);
    let mut pool_used = Vec::with_capacity(horizon);
    let mut disjoint = Tally::new(tag::REP_DISJOINT, "=");
    let mut coords = Tally::new(tag::REP_COORDS, "within");
    let mut err_a = Tally::new(tag::REP_ERROR_A, "<");
    let mut err_b = Tally::new(tag::REP_ERROR_B, "<");
    let mut weakened = 0usize;

    for n in 0..horizon {
        let (an, bn) = (&a.events()[n], &b.events()[n]);
        let overlap = an.meet(bn);
        let mu = overlap.measure();
        let slack = mu.to_rational() + h(n);
        if slack <= BigRational::zero() {
            return Err(Error::NoSlack { n });
        }
        let allowed: BTreeSet<Coordinate> = pool(n).into_iter().collect();
        let (c, d) = if mu.is_zero() {
            (an.clone(), bn.clone())
        } else {
            let e = overlap.split_half(&pool(n))?;
            let c = an.difference(bn).join(&e);
            let d = bn.difference(&e).difference(&c);
            (c, d)
        };

        // syntactic supports first; they contain the determining coordinates
        let mut used = extra_coords(c.support(), d.support(), &an.support(), &bn.support());
        if !(used.len() <= 1 && used.is_subset(&allowed)) {
            used = extra_coords(
                c.determining_coords(),
                d.determining_coords(),
                &an.determining_coords(),
                &bn.determining_coords(),
            );
        }
        let fresh = used.iter().next().copied();
        if fresh.is_some() {
            weakened += 1;
        }
        coords.record(used.len() <= 1 && used.is_subset(&allowed), || {
            (format!("n={n}"), format!("{} extra coordinates", used.len()), "at most one pool coordinate".into())
        });
        let meet = c.meet(&d);
        disjoint.record(meet.is_empty(), || (format!("n={n}"), meet.measure().to_string(), "0".into()));
        let da = an.distance(&c);
        err_a.record(da.to_rational() < slack, || (format!("n={n}"), da.to_string(), format_rational(&slack)));
        let db = bn.distance(&d);
        err_b.record(db.to_rational() < slack, || (format!("n={n}"), db.to_string(), format_rational(&slack)));

        cs.push(c);
        ds.push(d);
        pool_used.push(fresh);
    }

    let mut report = Report::new();
    let scope = format!("n < {horizon}");
    disjoint.finish(&mut report, &scope);
    coords.finish(&mut report, &format!("{scope}; {weakened} indices needed a pool coordinate"));
    err_a.finish(&mut report, &scope);
    err_b.finish(&mut report, &scope);
    Ok(Representatives {
        c: RandomSubsetName::new(cs),
        d: RandomSubsetName::new(ds),
        pool_used,
        report,
    })
}

/// Coordinates determining `c` or `d` that determine neither input.
fn extra_coords(
    c: BTreeSet<Coordinate>,
    d: BTreeSet<Coordinate>,
    a: &BTreeSet<Coordinate>,
    b: &BTreeSet<Coordinate>,
) -> BTreeSet<Coordinate> {
    c.into_iter()
        .chain(d)
        .filter(|x| !a.contains(x) && !b.contains(x))
        .collect()
}

/// `μ(⋁_{k≤n<M} ⟦n ∈ ȧ △ ċ⟧)` against its union bound `Σ_{k≤n<M} μ(⟦n ∈ ȧ △ ċ⟧)`.
pub fn truncated_disagreement(a: &RandomSubsetName, c: &RandomSubsetName, k: usize) -> Result<Check> {
    let event = a.pair_event(c, NameEvent::DisagreementBeyond(k))?;
    let mu = event.measure();
    let horizon = a.horizon().min(c.horizon());
    let sum: DyadicRational = (k..horizon).map(|n| a.events()[n].distance(&c.events()[n])).sum();
    Ok(Check::new(
        tag::TRUNCATED_DISAGREEMENT,
        format!("k={k}, horizon={horizon}"),
        &mu,
        "<=",
        &sum,
        mu <= sum,
    ))
}
