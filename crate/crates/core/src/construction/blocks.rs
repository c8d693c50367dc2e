use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::report::{tag, Check, Report, Tally};
use crate::cube::{ClopenSet, Coordinate, DyadicRational, PartialAssignment};
use crate::gapcore::RandomSubsetName;

/// `⌈log₂ x⌉` for `x ≥ 1`.
pub fn ceil_log2(x: u64) -> u32 {
    assert!(x >= 1, "ceil_log2 of zero");
    if x == 1 {
        0
    } else {
        64 - (x - 1).leading_zeros()
    }
}

/// The assignment on offsets `[start, start + len)` of `block` spelling the
/// low `len` bits of `j mod 2^len`, least significant bit at `start`.
pub fn phi(block: u64, start: u64, len: u32, j: i64) -> PartialAssignment {
    // arithmetic shift: bit k of the two's complement is bit k of j mod 2^len
    PartialAssignment::from_entries(
        (0..len).map(|k| (Coordinate::new(block, start + k as u64), (j >> k.min(63)) & 1 == 1)),
    )
}

/// Offset range `[start, start + len)` holding the base events for `n`.
pub fn window(n: u64) -> (u64, u32) {
    (n * ceil_log2(n + 1) as u64, ceil_log2(n + 2))
}

pub fn window_coords(alpha: u64, n: u64) -> impl Iterator<Item = Coordinate> {
    let (start, len) = window(n);
    (start..start + len as u64).map(move |o| Coordinate::new(alpha, o))
}

/// `s_α(n)` (`bit = false`, the window all zero) or `t_α(n)` (`bit = true`,
/// the window spelling 1).
pub fn base_assignment(alpha: u64, n: u64, bit: bool) -> PartialAssignment {
    let (start, len) = window(n);
    phi(alpha, start, len, bit as i64)
}

/// The names `ċ_α` and `ḋ_α` truncated to `n < horizon`.
pub fn base_names(alpha: u64, horizon: usize) -> (RandomSubsetName, RandomSubsetName) {
    let events = |bit| {
        RandomSubsetName::new(
            (0..horizon as u64)
                .map(|n| ClopenSet::cylinder(base_assignment(alpha, n, bit)))
                .collect(),
        )
    };
    (events(false), events(true))
}

/// Smallest `L` with `2^L ≥ n + 2`, by doubling.
fn length_oracle(n: u64) -> u32 {
    let mut l = 0;
    while (1u128 << l) < n as u128 + 2 {
        l += 1;
    }
    l
}

/// Integer checks on the block layout for all `n < horizon`: the window
/// inequality `(n+1)⌈log₂(n+2)⌉ − n⌈log₂(n+1)⌉ ≥ ⌈log₂(n+2)⌉`, and windows of
/// different `n` being pairwise disjoint within a block.
pub fn verify_blocks(horizon: u64) -> Report {
    let mut report = Report::new();
    let mut gap = Tally::new(tag::WINDOW_GAP, ">=");
    let mut disjoint = Tally::new(tag::WINDOW_DISJOINT, "<=");
    for n in 0..horizon {
        let l1 = ceil_log2(n + 1) as u64;
        let l2 = ceil_log2(n + 2) as u64;
        debug_assert_eq!(l2 as u32, length_oracle(n));
        let lhs = (n + 1) * l2 - n * l1;
        gap.record(lhs >= l2, || (format!("n={n}"), lhs.to_string(), l2.to_string()));
        if n + 1 < horizon {
            let (start, len) = window(n);
            let (next, _) = window(n + 1);
            let end = start + len as u64;
            disjoint.record(end <= next && len > 0, || {
                (format!("windows n={n}, n={}", n + 1), end.to_string(), next.to_string())
            });
        }
    }
    gap.finish(&mut report, &format!("n < {horizon}"));
    disjoint.finish(&mut report, &format!("consecutive windows, n < {horizon}"));

    // events of one n are determined by that n's window alone
    let mut layout = Tally::new(tag::LAYOUT, "within");
    for n in 0..horizon.min(64) {
        let w: std::collections::BTreeSet<Coordinate> = window_coords(0, n).collect();
        for bit in [false, true] {
            let d = ClopenSet::cylinder(base_assignment(0, n, bit)).determining_coords();
            layout.record(d == w, || (format!("n={n}"), format!("{} coords", d.len()), format!("window of {}", w.len())));
        }
    }
    layout.finish(&mut report, "determining coordinates vs windows");
    report
}

/// Exact measure law, the sandwich `1/(2n+4) < μ ≤ 1/(n+2)` and same-index
/// disjointness for every `α < generators`, `n < horizon`.
pub fn verify_base_names(generators: u64, horizon: usize) -> Report {
    let (law, sandwich, disjoint) = (0..generators)
        .into_par_iter()
        .map(|alpha| {
            let (c, d) = base_names(alpha, horizon);
            let mut law = Tally::new(tag::MEASURE_LAW, "=");
            let mut sandwich = Tally::new(tag::SANDWICH, "in");
            let mut disjoint = Tally::new(tag::SAME_INDEX, "=");
            for n in 0..horizon {
                let expected = DyadicRational::pow2_neg(length_oracle(n as u64));
                for (name, ev) in [("c", &c.events()[n]), ("d", &d.events()[n])] {
                    let mu = ev.measure();
                    law.record(mu == expected, || (format!("{name}_{alpha}({n})"), mu.to_string(), expected.to_string()));
                    let q = mu.to_rational();
                    let lower = BigRational::new(BigInt::from(1), BigInt::from(2 * n + 4));
                    let upper = BigRational::new(BigInt::from(1), BigInt::from(n + 2));
                    let ok = lower < q && q <= upper;
                    sandwich.record(ok, || {
                        (format!("{name}_{alpha}({n})"), mu.to_string(), format!("(1/{}, 1/{}]", 2 * n + 4, n + 2))
                    });
                }
                let meet = c.events()[n].meet(&d.events()[n]);
                disjoint.record(meet.is_empty(), || (format!("c_{alpha}({n}) ∧ d_{alpha}({n})"), meet.measure().to_string(), "0".into()));
            }
            (law, sandwich, disjoint)
        })
        .reduce(
            || (Tally::new(tag::MEASURE_LAW, "="), Tally::new(tag::SANDWICH, "in"), Tally::new(tag::SAME_INDEX, "=")),
            |mut a, b| {
                a.0.merge(b.0);
                a.1.merge(b.1);
                a.2.merge(b.2);
                a
            },
        );
    let scope = format!("alpha < {generators}, n < {horizon}");
    let mut report = Report::new();
    law.finish(&mut report, &scope);
    sandwich.finish(&mut report, &scope);
    disjoint.finish(&mut report, &scope);
    report
}

/// One record per sample `(α, β, n)`: for `α ≠ β` the cross term equals
/// `2^(−2⌈log₂(n+2)⌉)`, which is at most `1/(n+2)²`; for `α = β` it is empty.
pub fn verify_cross_terms(samples: &[(u64, u64, u64)]) -> Report {
    let checks: Vec<Check> = samples
        .par_iter()
        .map(|&(alpha, beta, n)| {
            let c = ClopenSet::cylinder(base_assignment(alpha, n, false));
            let d = ClopenSet::cylinder(base_assignment(beta, n, true));
            let mu = c.meet(&d).measure();
            let subject = format!("c_{alpha}({n}) ∧ d_{beta}({n})");
            if alpha == beta {
                return Check::new(tag::SAME_INDEX, subject, &mu, "=", 0, mu.is_zero());
            }
            let expected = DyadicRational::pow2_neg(2 * length_oracle(n));
            let bound = BigRational::new(BigInt::from(1), BigInt::from((n + 2) * (n + 2)));
            let pass = mu == expected && mu.to_rational() <= bound;
            let rhs = format!("{expected} <= {}", crate::cube::format_rational(&bound));
            Check::new(tag::CROSS_TERM, subject, &mu, "=", rhs, pass)
        })
        .collect();
    Report { checks }
}
