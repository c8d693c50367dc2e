use std::collections::BTreeSet;

use proptest::prelude::*;
use randgap_core::gapcore::{
    delta_system, interpolates_mod_k, ConcretePregap, DeltaSystem, PartitionLabel,
};

const HORIZON: usize = 12;

fn subset() -> impl Strategy<Value = BTreeSet<usize>> {
    proptest::collection::btree_set(0..HORIZON, 0..5)
}

fn pregap(club: bool) -> impl Strategy<Value = ConcretePregap> {
    proptest::collection::vec((subset(), subset()), 1..7).prop_map(move |pairs| {
        let mut p = ConcretePregap::new(HORIZON);
        for (i, (a, b)) in pairs.into_iter().enumerate() {
            let b = if club { b.difference(&a).copied().collect() } else { b };
            p.insert(i, a, b).unwrap();
        }
        p
    })
}

proptest! {
    #[test]
    fn partitions_are_symmetric(p in pregap(false), k in 0..HORIZON + 1) {
        let idx: Vec<usize> = p.indices().collect();
        for &i in &idx {
            for &j in &idx {
                if i != j {
                    prop_assert_eq!(p.classify_k(i, j).unwrap(), p.classify_k(j, i).unwrap());
                }
                prop_assert_eq!(p.classify_l(i, j, k).unwrap(), p.classify_l(j, i, k).unwrap());
            }
        }
    }

    #[test]
    fn l0_is_monotone_in_the_cut(p in pregap(false), k in 0..HORIZON, extra in 0..4usize) {
        let idx: Vec<usize> = p.indices().collect();
        for &i in &idx {
            for &j in &idx {
                if p.classify_l(i, j, k).unwrap() == (PartitionLabel::L0 { cut: k }) {
                    let k2 = k + extra;
                    prop_assert_eq!(p.classify_l(i, j, k2).unwrap(), PartitionLabel::L0 { cut: k2 });
                }
            }
        }
    }

    #[test]
    fn club_makes_k0_and_l0_homogeneity_agree(p in pregap(true), mask in 0u32..128) {
        prop_assert!(p.satisfies_club());
        let j: BTreeSet<usize> = p.indices().filter(|i| mask >> i & 1 == 1).collect();
        prop_assert_eq!(
            p.is_homogeneous(&j, PartitionLabel::K0).unwrap(),
            p.is_homogeneous(&j, PartitionLabel::L0 { cut: 0 }).unwrap()
        );
    }

    #[test]
    fn min_cut_is_least_homogeneous_cut(p in pregap(false), mask in 0u32..128) {
        let j: BTreeSet<usize> = p.indices().filter(|i| mask >> i & 1 == 1).collect();
        let cut = p.min_cut(&j).unwrap();
        let at = p.is_homogeneous(&j, PartitionLabel::L0 { cut }).unwrap();
        prop_assert!(at);
        if cut > 0 {
            let below = p.is_homogeneous(&j, PartitionLabel::L0 { cut: cut - 1 }).unwrap();
            prop_assert!(!below);
        }
        prop_assert_eq!(cut == 0, p.is_homogeneous(&j, PartitionLabel::L0 { cut: 0 }).unwrap());
    }

    #[test]
    fn interpolation_splits_over_unions(
        d in subset(),
        f in proptest::collection::vec((subset(), subset()), 0..4),
        g in proptest::collection::vec((subset(), subset()), 0..4),
        k in 0..HORIZON,
    ) {
        let both: Vec<_> = f.iter().chain(&g).cloned().collect();
        prop_assert_eq!(
            interpolates_mod_k(&d, &both, k),
            interpolates_mod_k(&d, &f, k) && interpolates_mod_k(&d, &g, k)
        );
    }

    /// Two homogeneous tuples interpolated by one `d` above `k`, with equal
    /// traces below `k`, merge into a K0-homogeneous set.
    #[test]
    fn merge_of_interpolated_tuples_is_k0(
        k in 1..HORIZON,
        d in subset(),
        low in proptest::collection::vec((0..HORIZON, any::<bool>()), 0..6),
        highs in proptest::collection::vec((subset(), subset()), 2..4),
    ) {
        // lower trace shared by both tuples: a-part and b-part disjoint below k
        let low_a: BTreeSet<usize> = low.iter().filter(|(n, s)| *n < k && *s).map(|p| p.0).collect();
        let low_b: BTreeSet<usize> = low.iter().filter(|(n, s)| *n < k && !*s).map(|p| p.0)
            .filter(|n| !low_a.contains(n)).collect();
        let mut p = ConcretePregap::new(HORIZON);
        let width = highs.len();
        for (copy, shift) in [(0, 0usize), (1, 1usize)] {
            for (l, (ha, hb)) in highs.iter().enumerate() {
                // above the cut: a inside d, b outside d, varied between copies
                let a: BTreeSet<usize> = low_a.iter().copied()
                    .chain(ha.iter().map(|n| n + shift).filter(|n| *n >= k && *n < HORIZON && d.contains(n)))
                    .collect();
                let b: BTreeSet<usize> = low_b.iter().copied()
                    .chain(hb.iter().map(|n| n + shift).filter(|n| *n >= k && *n < HORIZON && !d.contains(n)))
                    .collect();
                p.insert(copy * width + l, a, b).unwrap();
            }
        }
        let first: BTreeSet<usize> = (0..width).collect();
        let second: BTreeSet<usize> = (width..2 * width).collect();
        let l0 = PartitionLabel::L0 { cut: 0 };
        prop_assert!(p.is_homogeneous(&first, l0).unwrap());
        prop_assert!(p.is_homogeneous(&second, l0).unwrap());
        let family: Vec<_> = p.indices().map(|i| {
            let (a, b) = p.pair(i).unwrap();
            (a.clone(), b.clone())
        }).collect();
        prop_assert!(interpolates_mod_k(&d, &family, k));
        let all: BTreeSet<usize> = first.union(&second).copied().collect();
        prop_assert!(p.is_homogeneous(&all, PartitionLabel::K0).unwrap());
    }
}

/// Exhaustive oracle: the largest Δ-subsystem by enumerating subfamilies.
fn brute_force_delta(family: &[BTreeSet<u8>]) -> usize {
    let n = family.len();
    let mut best = n.min(1);
    for mask in 0u32..1 << n {
        let members: Vec<&BTreeSet<u8>> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &family[i]).collect();
        if members.len() <= best {
            continue;
        }
        let root: BTreeSet<u8> = members[0].intersection(members[1]).copied().collect();
        let ok = members.iter().enumerate().all(|(x, a)| {
            members[x + 1..].iter().all(|b| a.intersection(b).copied().collect::<BTreeSet<u8>>() == root)
        });
        if ok {
            best = members.len();
        }
    }
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_system_matches_exhaustive_oracle(
        size in 1usize..4,
        raw in proptest::collection::vec(proptest::collection::btree_set(0u8..7, 1..4), 1..=12),
    ) {
        // uniform-size family
        let family: Vec<BTreeSet<u8>> = raw.into_iter().map(|s| {
            let mut s: BTreeSet<u8> = s.into_iter().take(size).collect();
            let mut fill = 0u8;
            while s.len() < size {
                s.insert(7 + fill);
                fill += 1;
            }
            s
        }).collect();
        let got = delta_system(&family, 2);
        prop_assert!(got.found.verify(&family));
        prop_assert_eq!(got.found.len(), brute_force_delta(&family));
        prop_assert_eq!(got.meets_threshold, got.found.len() >= 2);
    }

    #[test]
    fn delta_system_output_verifies(
        raw in proptest::collection::vec(proptest::collection::btree_set(0u16..40, 0..5), 0..60),
    ) {
        let got: DeltaSystem<u16> = delta_system(&raw, 1).found;
        prop_assert!(got.verify(&raw));
        prop_assert_eq!(got.is_empty(), raw.is_empty());
    }
}
