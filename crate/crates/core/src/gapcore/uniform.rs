use std::collections::{BTreeMap, BTreeSet};

use crate::cube::{Coordinate, PartialAssignment};

/// A finite structure of partial assignments attached to one item of a
/// family: an unordered collection of blocks (each a sequence of cylinder
/// lists) plus a distinguished tail assignment.
///
/// A bare assignment `s` is the structure with no blocks and tail `s`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord)]
pub struct Structure {
    pub blocks: Vec<Vec<Vec<PartialAssignment>>>,
    pub tail: PartialAssignment,
}

impl Structure {
    pub fn from_assignment(s: PartialAssignment) -> Self {
        Structure {
            blocks: Vec::new(),
            tail: s,
        }
    }

    fn assignments(&self) -> impl Iterator<Item = &PartialAssignment> {
        self.blocks.iter().flatten().flatten().chain(std::iter::once(&self.tail))
    }

    pub fn support(&self) -> BTreeSet<Coordinate> {
        self.assignments().flat_map(|s| s.domain()).collect()
    }
}

/// Attributes a family can be made constant on.
#[derive(Clone, Debug)]
pub enum UniformKey {
    /// Number of coordinates the structure mentions.
    Size,
    /// Number of mentioned coordinates outside the root.
    SizeOffRoot(BTreeSet<Coordinate>),
    /// Restriction of the tail to the root.
    TraceOnRoot(BTreeSet<Coordinate>),
    /// Isomorphism type over the root: equal after an order-preserving
    /// relabeling that fixes every root coordinate.
    IsoType(BTreeSet<Coordinate>),
}

/// A relabeled coordinate: root coordinates keep their identity; the others
/// are named by how many root coordinates precede them and their rank.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Label {
    Root(Coordinate),
    Free { after_root: usize, rank: usize },
}

type Relabeled = Vec<(Label, bool)>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum KeyValue {
    Count(usize),
    Trace(PartialAssignment),
    Iso {
        blocks: Vec<Vec<Vec<Relabeled>>>,
        tail: Relabeled,
    },
}

impl Structure {
    pub fn key(&self, key: &UniformKey) -> KeyValue {
        match key {
            UniformKey::Size => KeyValue::Count(self.support().len()),
            UniformKey::SizeOffRoot(root) => KeyValue::Count(self.support().difference(root).count()),
            UniformKey::TraceOnRoot(root) => KeyValue::Trace(self.tail.restricted_to(root)),
            UniformKey::IsoType(root) => self.iso_type(root),
        }
    }

    fn iso_type(&self, root: &BTreeSet<Coordinate>) -> KeyValue {
        let labels: BTreeMap<Coordinate, Label> = self
            .support()
            .into_iter()
            .filter(|c| !root.contains(c))
            .enumerate()
            .map(|(rank, c)| {
                let after_root = root.range(..c).count();
                (c, Label::Free { after_root, rank })
            })
            .collect();
        let relabel = |s: &PartialAssignment| -> Relabeled {
            let mut out: Relabeled = s
                .iter()
                .map(|(c, b)| (labels.get(&c).cloned().unwrap_or(Label::Root(c)), b))
                .collect();
            out.sort();
            out
        };
        let mut blocks: Vec<Vec<Vec<Relabeled>>> = self
            .blocks
            .iter()
            .map(|block| {
                block
                    .iter()
                    .map(|list| {
                        let mut l: Vec<Relabeled> = list.iter().map(relabel).collect();
                        l.sort();
                        l
                    })
                    .collect()
            })
            .collect();
        blocks.sort();
        KeyValue::Iso {
            blocks,
            tail: relabel(&self.tail),
        }
    }
}

/// Indices of the largest class of `keys` (ties go to the class whose first
/// member comes earliest).
pub fn modal_class<K: Ord>(keys: &[K]) -> Vec<usize> {
    let mut classes: BTreeMap<&K, Vec<usize>> = BTreeMap::new();
    for (i, k) in keys.iter().enumerate() {
        classes.entry(k).or_default().push(i);
    }
    classes
        .into_values()
        .max_by(|a, b| a.len().cmp(&b.len()).then_with(|| b[0].cmp(&a[0])))
        .unwrap_or_default()
}

/// The largest subfamily on which every requested key is constant.
pub fn uniformize(items: &[Structure], keys: &[UniformKey]) -> Vec<usize> {
    let values: Vec<Vec<KeyValue>> = items
        .iter()
        .map(|item| keys.iter().map(|k| item.key(k)).collect())
        .collect();
    modal_class(&values)
}
