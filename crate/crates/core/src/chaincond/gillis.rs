use num_rational::BigRational;
use rayon::prelude::*;

use super::Delta;
use crate::cube::ClopenSet;
use crate::error::{Error, Result};
use crate::gapcore::Extraction;

/// Families at most this large are searched exhaustively.
const EXACT_CLIQUE: usize = 20;

/// A subfamily on which every two members `x, y` satisfy `μ(x ∧ y) > δ²`.
///
/// Requires `μ(x) > δ` for each event. The returned indices are sorted and
/// every pair among them has been checked exactly.
pub fn gillis_extract(events: &[ClopenSet], delta: &Delta, threshold: usize) -> Result<Extraction<Vec<usize>>> {
    for (i, x) in events.iter().enumerate() {
        if !delta.is_exceeded_by(&x.measure().to_rational()) {
            return Err(Error::Precondition(format!("event {i} has measure {} not above delta", x.measure())));
        }
    }
    let adj = pair_graph(events, |x, y| x.meet(y).measure().to_rational() > *delta.square());
    let chosen = if events.len() <= EXACT_CLIQUE {
        max_clique(&adj)
    } else {
        greedy_clique(&adj)
    };
    debug_assert!(chosen.iter().all(|&i| chosen.iter().all(|&j| i == j || adj[i][j])));
    let ok = chosen.len() >= threshold;
    Ok(Extraction::new(chosen, threshold, ok))
}

/// Adjacency matrix of `edge` over all unordered pairs, built in parallel.
pub(crate) fn pair_graph<T: Sync>(items: &[T], edge: impl Fn(&T, &T) -> bool + Sync) -> Vec<Vec<bool>> {
    let n = items.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let hits: Vec<bool> = pairs.par_iter().map(|&(i, j)| edge(&items[i], &items[j])).collect();
    let mut adj = vec![vec![false; n]; n];
    for (&(i, j), hit) in pairs.iter().zip(hits) {
        adj[i][j] = hit;
        adj[j][i] = hit;
    }
    adj
}

/// Bron–Kerbosch with pivoting.
fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    fn expand(adj: &[Vec<bool>], r: &mut Vec<usize>, p: Vec<usize>, x: Vec<usize>, best: &mut Vec<usize>) {
        if p.is_empty() {
            if x.is_empty() && r.len() > best.len() {
                *best = r.clone();
            }
            return;
        }
        if r.len() + p.len() <= best.len() {
            return;
        }
        let pivot = *p
            .iter()
            .chain(&x)
            .max_by_key(|&&u| p.iter().filter(|&&v| adj[u][v]).count())
            .expect("p is nonempty");
        let mut p = p;
        let mut x = x;
        for v in p.clone() {
            if adj[pivot][v] {
                continue;
            }
            r.push(v);
            let np = p.iter().copied().filter(|&w| adj[v][w]).collect();
            let nx = x.iter().copied().filter(|&w| adj[v][w]).collect();
            expand(adj, r, np, nx, best);
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
    }
    let mut best = Vec::new();
    expand(adj, &mut Vec::new(), (0..adj.len()).collect(), Vec::new(), &mut best);
    best.sort_unstable();
    best
}

/// Clique growth from every start vertex, always adding the candidate with
/// most neighbours among the remaining candidates.
fn greedy_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    let n = adj.len();
    (0..n)
        .into_par_iter()
        .map(|start| {
            let mut clique = vec![start];
            let mut cand: Vec<usize> = (0..n).filter(|&v| adj[start][v]).collect();
            while !cand.is_empty() {
                let &next = cand
                    .iter()
                    .max_by_key(|&&v| (cand.iter().filter(|&&w| adj[v][w]).count(), std::cmp::Reverse(v)))
                    .expect("nonempty");
                clique.push(next);
                cand.retain(|&w| w != next && adj[next][w]);
            }
            clique.sort_unstable();
            clique
        })
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b.cmp(a)))
        .unwrap_or_default()
}

/// The pair `(i, j)` minimizing `μ(x_i ∧ x_j | y_i ∧ y_j)` over pairs with a
/// nonnull condition: a diagnostic for how far arbitrary (non-cylinder)
/// conditions are from the `δ²` bound.
pub fn worst_conditional_pair(pairs: &[(ClopenSet, ClopenSet)]) -> Option<(usize, usize, BigRational)> {
    let n = pairs.len();
    let idx: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    idx.par_iter()
        .filter_map(|&(i, j)| {
            let cond = pairs[i].1.meet(&pairs[j].1);
            let r = pairs[i].0.meet(&pairs[j].0).conditional(&cond).ok()?;
            Some((i, j, r))
        })
        .min_by(|a, b| a.2.cmp(&b.2).then_with(|| (a.0, a.1).cmp(&(b.0, b.1))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cube::{parse_rational, Coordinate, PartialAssignment};

    fn delta(s: &str) -> Delta {
        Delta::from_value(&parse_rational(s).unwrap()).unwrap()
    }

    fn cyl(entries: &[(u64, u64, bool)]) -> ClopenSet {
        ClopenSet::cylinder(PartialAssignment::from_entries(
            entries.iter().map(|&(b, o, v)| (Coordinate::new(b, o), v)),
        ))
    }

    #[test]
    fn identical_events_kept() {
        let x = cyl(&[(0, 0, true)]);
        let got = gillis_extract(&vec![x; 30], &delta("1/3"), 30).unwrap();
        assert!(got.meets_threshold);
        assert_eq!(got.found, (0..30).collect::<Vec<_>>());
    }

    #[test]
    fn independent_events_kept() {
        let events: Vec<ClopenSet> = (0..12).map(|b| cyl(&[(b, 0, true)])).collect();
        let got = gillis_extract(&events, &delta("2/5"), 12).unwrap();
        assert_eq!(got.found.len(), 12);
    }

    #[test]
    fn precondition_checked() {
        let events = vec![cyl(&[(0, 0, true), (0, 1, true)])];
        assert!(gillis_extract(&events, &delta("1/3"), 1).is_err());
    }

    #[test]
    fn exact_and_greedy_agree_on_small_graph() {
        // two disjoint triangles joined by one edge
        let mut adj = vec![vec![false; 6]; 6];
        for (i, j) in [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)] {
            adj[i][j] = true;
            adj[j][i] = true;
        }
        assert_eq!(max_clique(&adj), vec![0, 1, 2]);
        assert_eq!(greedy_clique(&adj).len(), 3);
    }

    #[test]
    fn worst_pair_found() {
        let pairs = vec![
            (cyl(&[(0, 0, true)]), ClopenSet::whole()),
            (cyl(&[(0, 0, false)]), ClopenSet::whole()),
            (cyl(&[(1, 0, true)]), ClopenSet::whole()),
        ];
        let (i, j, r) = worst_conditional_pair(&pairs).unwrap();
        assert_eq!((i, j), (0, 1));
        assert_eq!(r, parse_rational("0").unwrap());
    }
}
