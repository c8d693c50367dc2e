use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::report::{tag, Report, Tally};
use crate::error::{Error, ParseError, Result};

/// Finite index sets `T_α(n)` for `α < generators`, `n < horizon`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tower {
    generators: usize,
    horizon: usize,
    /// `entries[α][n]`, sorted.
    entries: Vec<Vec<Vec<usize>>>,
}

/// `2(ξ+1)² ≤ ∛(n+1)`, cubed.
fn admits(xi: usize, n: usize) -> bool {
    8 * (xi as u128 + 1).pow(6) <= n as u128 + 1
}

/// First `n` with `admits(ξ, n)`.
pub fn entry_threshold(xi: usize) -> u128 {
    8 * (xi as u128 + 1).pow(6) - 1
}

/// `T_α(n) = {α} ∪ {ξ < α : 2(ξ+1)² ≤ ∛(n+1)}`.
pub fn build_tower(generators: usize, horizon: usize) -> Result<Tower> {
    if generators == 0 || horizon == 0 {
        return Err(Error::Config("tower needs at least one generator and horizon at least 1".into()));
    }
    let entries = (0..generators)
        .map(|alpha| {
            (0..horizon)
                .map(|n| {
                    let mut t: Vec<usize> = (0..alpha).filter(|&xi| admits(xi, n)).collect();
                    t.push(alpha);
                    t
                })
                .collect()
        })
        .collect();
    Ok(Tower {
        generators,
        horizon,
        entries,
    })
}

impl Tower {
    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn get(&self, alpha: usize, n: usize) -> &[usize] {
        &self.entries[alpha][n]
    }

    /// Replaces one entry; meant for fault injection.
    pub fn set(&mut self, alpha: usize, n: usize, mut entry: Vec<usize>) {
        entry.sort_unstable();
        entry.dedup();
        self.entries[alpha][n] = entry;
    }

    /// Smallest `n₀` with `T_ξ(n) ⊆ T_α(n)` for all `n₀ ≤ n < horizon`.
    pub fn containment_from(&self, xi: usize, alpha: usize) -> usize {
        (0..self.horizon)
            .rev()
            .find(|&n| !is_subset(self.get(xi, n), self.get(alpha, n)))
            .map_or(0, |n| n + 1)
    }

    /// The tower conditions: membership `α ∈ T_α(n)`, eventual containment
    /// from the recursion's threshold on, the cube-root bound `|T|³ ≤ n+1`,
    /// and the slack form `8(|T| − 1)⁶ ≤ n+1` of the vanishing-ratio condition.
    pub fn verify(&self) -> Report {
        let mut report = Report::new();
        let mut m1 = Tally::new(tag::TOWER_MEMBER, "in");
        let mut m3 = Tally::new(tag::TOWER_CUBE_ROOT, "<=");
        let mut m4 = Tally::new(tag::TOWER_SLACK, "<=");
        for alpha in 0..self.generators {
            for n in 0..self.horizon {
                let t = self.get(alpha, n);
                m1.record(t.binary_search(&alpha).is_ok(), || {
                    (format!("T_{alpha}({n})"), alpha.to_string(), format!("{t:?}"))
                });
                let size = t.len() as u128;
                m3.record(size.pow(3) <= n as u128 + 1, || {
                    (format!("T_{alpha}({n})"), format!("|T|^3 = {}", size.pow(3)), format!("n+1 = {}", n + 1))
                });
                let slack = 8 * size.saturating_sub(1).pow(6);
                m4.record(slack <= n as u128 + 1, || {
                    (format!("T_{alpha}({n})"), format!("8(|T|-1)^6 = {slack}"), format!("n+1 = {}", n + 1))
                });
            }
        }
        let scope = format!("alpha < {}, n < {}", self.generators, self.horizon);
        m1.finish(&mut report, &scope);

        let pairs: Vec<(usize, usize)> = (0..self.generators)
            .flat_map(|a| (0..a).map(move |xi| (xi, a)))
            .collect();
        let m2 = pairs
            .par_iter()
            .fold(
                || Tally::new(tag::TOWER_CONTAINMENT, "<="),
                |mut tally, &(xi, alpha)| {
                    let from = self.containment_from(xi, alpha) as u128;
                    let bound = entry_threshold(xi);
                    tally.record(from <= bound, || {
                        (format!("T_{xi} ⊆ T_{alpha} from n"), from.to_string(), bound.to_string())
                    });
                    tally
                },
            )
            .reduce(
                || Tally::new(tag::TOWER_CONTAINMENT, "<="),
                |mut a, b| {
                    a.merge(b);
                    a
                },
            );
        m2.finish(&mut report, &format!("{} pairs xi < alpha", pairs.len()));
        m3.finish(&mut report, &scope);
        m4.finish(&mut report, &scope);
        report
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Runs of equal entries: `α from..to : ξ ξ ξ`, one per line.
impl fmt::Display for Tower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "generators = {}", self.generators)?;
        writeln!(f, "horizon = {}", self.horizon)?;
        for (alpha, row) in self.entries.iter().enumerate() {
            let mut start = 0;
            for n in 1..=row.len() {
                if n == row.len() || row[n] != row[start] {
                    let items: Vec<String> = row[start].iter().map(ToString::to_string).collect();
                    writeln!(f, "{alpha} {start}..{n} : {}", items.join(" "))?;
                    start = n;
                }
            }
        }
        Ok(())
    }
}

impl FromStr for Tower {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |line: &str| Error::from(ParseError::new("tower", line));
        let mut generators = None;
        let mut horizon = None;
        let mut runs = Vec::new();
        for line in s.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
            if let Some((key, value)) = line.split_once('=') {
                let v: usize = value.trim().parse().map_err(|_| bad(line))?;
                match key.trim() {
                    "generators" => generators = Some(v),
                    "horizon" => horizon = Some(v),
                    _ => return Err(bad(line)),
                }
                continue;
            }
            let (head, body) = line.split_once(':').ok_or_else(|| bad(line))?;
            let mut head = head.split_whitespace();
            let alpha: usize = head.next().and_then(|a| a.parse().ok()).ok_or_else(|| bad(line))?;
            let (from, to) = head
                .next()
                .and_then(|r| r.split_once(".."))
                .and_then(|(a, b)| Some((a.parse::<usize>().ok()?, b.parse::<usize>().ok()?)))
                .ok_or_else(|| bad(line))?;
            let items = body
                .split_whitespace()
                .map(|x| x.parse::<usize>().map_err(|_| bad(line)))
                .collect::<Result<Vec<_>>>()?;
            runs.push((alpha, from, to, items));
        }
        let generators = generators.ok_or_else(|| bad("missing generators"))?;
        let horizon = horizon.ok_or_else(|| bad("missing horizon"))?;
        let mut entries: Vec<Vec<Option<Vec<usize>>>> = vec![vec![None; horizon]; generators];
        for (alpha, from, to, mut items) in runs {
            if alpha >= generators || from >= to || to > horizon {
                return Err(bad(&format!("run {alpha} {from}..{to}")));
            }
            items.sort_unstable();
            items.dedup();
            for slot in &mut entries[alpha][from..to] {
                *slot = Some(items.clone());
            }
        }
        let entries = entries
            .into_iter()
            .enumerate()
            .map(|(alpha, row)| {
                row.into_iter()
                    .enumerate()
                    .map(|(n, e)| e.ok_or_else(|| bad(&format!("missing entry {alpha} {n}"))))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tower {
            generators,
            horizon,
            entries,
        })
    }
}
