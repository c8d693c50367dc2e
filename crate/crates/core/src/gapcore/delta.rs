use std::collections::BTreeSet;

use serde::Serialize;

use super::Extraction;

/// A subfamily whose members pairwise intersect exactly in `root`.
/// `petals` are indices into the input family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaSystem<T: Ord> {
    pub root: BTreeSet<T>,
    pub petals: Vec<usize>,
}

impl<T: Ord + Clone> DeltaSystem<T> {
    pub fn len(&self) -> usize {
        self.petals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.petals.is_empty()
    }

    /// Pairwise-exact check against the family it was extracted from.
    pub fn verify(&self, family: &[BTreeSet<T>]) -> bool {
        let petals: Vec<&BTreeSet<T>> = self.petals.iter().map(|&i| &family[i]).collect();
        if petals.iter().any(|p| !self.root.is_subset(p)) {
            return false;
        }
        petals.iter().enumerate().all(|(x, p)| {
            petals[x + 1..]
                .iter()
                .all(|q| p.intersection(q).cloned().collect::<BTreeSet<T>>() == self.root)
        })
    }
}

/// Candidate lists at most this long are packed exactly.
const EXACT_PACKING: usize = 24;

/// Largest Δ-subsystem found in `family`.
///
/// Every Δ-system with two or more petals has as root the intersection of
/// some two members, so each such intersection is tried as a root; the
/// petals (members minus the root) must then be pairwise disjoint, a set
/// packing solved exactly for short candidate lists and greedily otherwise.
pub fn delta_system<T: Ord + Clone>(family: &[BTreeSet<T>], target: usize) -> Extraction<DeltaSystem<T>> {
    let mut best = match family.first() {
        Some(first) => DeltaSystem {
            root: first.clone(),
            petals: vec![0],
        },
        None => DeltaSystem {
            root: BTreeSet::new(),
            petals: Vec::new(),
        },
    };

    let mut roots: BTreeSet<BTreeSet<T>> = BTreeSet::new();
    for (i, a) in family.iter().enumerate() {
        for b in &family[i + 1..] {
            roots.insert(a.intersection(b).cloned().collect());
        }
    }

    for root in roots {
        let candidates: Vec<usize> = (0..family.len()).filter(|&i| root.is_subset(&family[i])).collect();
        if candidates.len() <= best.len() {
            continue;
        }
        let petals: Vec<BTreeSet<T>> = candidates
            .iter()
            .map(|&i| family[i].difference(&root).cloned().collect())
            .collect();
        let chosen = if candidates.len() <= EXACT_PACKING {
            exact_packing(&petals)
        } else {
            greedy_packing(&petals)
        };
        if chosen.len() > best.len() {
            best = DeltaSystem {
                root,
                petals: chosen.into_iter().map(|x| candidates[x]).collect(),
            };
        }
    }

    let meets_threshold = best.len() >= target;
    Extraction::new(best, target, meets_threshold)
}

fn conflicts<T: Ord>(petals: &[BTreeSet<T>]) -> Vec<u64> {
    let mut adj = vec![0u64; petals.len()];
    for i in 0..petals.len() {
        for j in i + 1..petals.len() {
            if !petals[i].is_disjoint(&petals[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    adj
}

fn exact_packing<T: Ord>(petals: &[BTreeSet<T>]) -> Vec<usize> {
    fn search(adj: &[u64], open: u64, chosen: u64, best: &mut u64) {
        if open == 0 {
            if chosen.count_ones() > best.count_ones() {
                *best = chosen;
            }
            return;
        }
        if chosen.count_ones() + open.count_ones() <= best.count_ones() {
            return;
        }
        let v = open.trailing_zeros() as usize;
        let bit = 1u64 << v;
        search(adj, open & !bit & !adj[v], chosen | bit, best);
        if adj[v] & open != 0 {
            search(adj, open & !bit, chosen, best);
        }
    }
    let adj = conflicts(petals);
    let all = if petals.len() == 64 { u64::MAX } else { (1u64 << petals.len()) - 1 };
    let mut best = 0u64;
    search(&adj, all, 0, &mut best);
    (0..petals.len()).filter(|&i| best >> i & 1 == 1).collect()
}

fn greedy_packing<T: Ord + Clone>(petals: &[BTreeSet<T>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..petals.len()).collect();
    order.sort_by_key(|&i| petals[i].len());
    let mut used: BTreeSet<T> = BTreeSet::new();
    let mut chosen = Vec::new();
    for i in order {
        if petals[i].is_disjoint(&used) {
            used.extend(petals[i].iter().cloned());
            chosen.push(i);
        }
    }
    chosen.sort_unstable();
    chosen
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(sets: &[&[u32]]) -> Vec<BTreeSet<u32>> {
        sets.iter().map(|s| s.iter().copied().collect()).collect()
    }

    #[test]
    fn pairwise_disjoint_family() {
        let f = fam(&[&[1, 2], &[3], &[4, 5, 6]]);
        let got = delta_system(&f, 3);
        assert!(got.meets_threshold);
        assert!(got.found.root.is_empty());
        assert_eq!(got.found.petals, vec![0, 1, 2]);
        assert!(got.found.verify(&f));
    }

    #[test]
    fn identical_sets() {
        let f = fam(&[&[1, 2], &[1, 2], &[1, 2]]);
        let got = delta_system(&f, 3);
        assert_eq!(got.found.root, [1, 2].into_iter().collect());
        assert_eq!(got.found.petals, vec![0, 1, 2]);
    }

    #[test]
    fn sunflower_with_core() {
        let f = fam(&[&[1, 2], &[1, 3], &[1, 4], &[2, 3]]);
        let got = delta_system(&f, 3);
        assert!(got.meets_threshold);
        assert_eq!(got.found.root, [1].into_iter().collect());
        assert_eq!(got.found.petals, vec![0, 1, 2]);
    }

    #[test]
    fn target_too_large() {
        let f = fam(&[&[1], &[2]]);
        let got = delta_system(&f, 3);
        assert!(!got.meets_threshold);
        assert_eq!(got.found.len(), 2);
        let empty: Vec<BTreeSet<u32>> = Vec::new();
        assert!(delta_system(&empty, 0).found.is_empty());
    }
}
