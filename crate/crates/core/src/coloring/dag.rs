//! The validity table, the compatibility DAG over valid keys, and s–t search.
//!
//! Arcs are never materialized. The successors of SP(i, j, c1, c2, c3) are
//! all valid keys of the form SP(j+1, k, c2, c3, c4), which only depend on
//! the triple (j+1, c2, c3); breadth-first search expands each such group once.

use std::collections::{HashMap, VecDeque};

use crate::color::Color;

use super::key::SubproblemKey;

fn end_code(c: Option<Color>) -> usize {
    c.map_or(0, |c| usize::from(c.get()))
}

/// Bit position of a color pattern inside its segment's 48-bit word.
fn pattern_bit(key: &SubproblemKey) -> u32 {
    (end_code(key.c1) * 12 + (usize::from(key.c2.get()) - 1) * 4 + end_code(key.c3)) as u32
}

/// Which keys of a backbone of length `n` are valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityTable {
    n: usize,
    words: Vec<u64>,
}

impl ValidityTable {
    /// A table with every key invalid.
    pub fn new(n: usize) -> Self {
        ValidityTable {
            n,
            words: vec![0; n * n],
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn word(&self, key: &SubproblemKey) -> usize {
        (key.i - 1) * self.n + (key.j - 1)
    }

    /// False for keys that are not well-formed for this backbone.
    pub fn is_valid(&self, key: &SubproblemKey) -> bool {
        key.is_valid_for(self.n) && self.words[self.word(key)] >> pattern_bit(key) & 1 == 1
    }

    /// # Panics
    /// If `key` is not well-formed for this backbone.
    pub fn set(&mut self, key: &SubproblemKey, valid: bool) {
        assert!(
            key.is_valid_for(self.n),
            "{key} is not a key for a backbone of length {}",
            self.n
        );
        let w = self.word(key);
        let bit = 1u64 << pattern_bit(key);
        if valid {
            self.words[w] |= bit;
        } else {
            self.words[w] &= !bit;
        }
    }

    /// Valid keys in enumeration order.
    pub fn valid_keys(&self) -> impl Iterator<Item = SubproblemKey> + '_ {
        SubproblemKey::all(self.n).filter(|k| self.is_valid(k))
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DagNode {
    Source,
    Sink,
    Key(SubproblemKey),
}

/// H: source, sink and every valid key, with implicit arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubproblemDag {
    table: ValidityTable,
}

/// Builds H over `valid_keys` for a backbone of length `n`.
///
/// # Panics
/// If a key is not well-formed for `n`.
pub fn build_subproblem_dag(valid_keys: impl IntoIterator<Item = SubproblemKey>, n: usize) -> SubproblemDag {
    let mut table = ValidityTable::new(n);
    for k in valid_keys {
        table.set(&k, true);
    }
    SubproblemDag { table }
}

impl SubproblemDag {
    pub fn from_table(table: ValidityTable) -> Self {
        SubproblemDag { table }
    }

    pub fn n(&self) -> usize {
        self.table.n
    }

    pub fn contains(&self, key: &SubproblemKey) -> bool {
        self.table.is_valid(key)
    }

    pub fn node_count(&self) -> usize {
        self.table.count() + 2
    }

    /// Valid keys starting at `i` with left color `c1` and segment color `c2`,
    /// ordered by right end, then right color.
    fn group(&self, i: usize, c1: Option<Color>, c2: Color) -> impl Iterator<Item = SubproblemKey> + '_ {
        let n = self.n();
        (i..=n).flat_map(move |j| {
            let rights: Vec<Option<Color>> = if j == n {
                vec![None]
            } else {
                Color::ALL.iter().copied().map(Some).collect()
            };
            rights
                .into_iter()
                .map(move |c3| SubproblemKey { i, j, c1, c2, c3 })
                .filter(|k| self.table.is_valid(k))
        })
    }

    /// Out-neighbors of `node` in enumeration order.
    pub fn successors(&self, node: &DagNode) -> Vec<DagNode> {
        match node {
            DagNode::Source if self.n() > 0 => self
                .table
                .valid_keys()
                .take_while(|k| k.i == 1)
                .map(DagNode::Key)
                .collect(),
            DagNode::Key(k) if self.contains(k) => match k.c3 {
                None => vec![DagNode::Sink],
                Some(c3) => self.group(k.j + 1, Some(k.c2), c3).map(DagNode::Key).collect(),
            },
            _ => Vec::new(),
        }
    }

    /// Every arc, sources in enumeration order.
    pub fn arcs(&self) -> Vec<(DagNode, DagNode)> {
        std::iter::once(DagNode::Source)
            .chain(self.table.valid_keys().map(DagNode::Key))
            .flat_map(|u| self.successors(&u).into_iter().map(move |v| (u, v)))
            .collect()
    }
}

/// Breadth-first search from the source; the keys of the first s–t path found.
pub fn find_st_path(h: &SubproblemDag) -> Option<Vec<SubproblemKey>> {
    let n = h.n();
    let mut parent: HashMap<SubproblemKey, Option<SubproblemKey>> = HashMap::new();
    let mut queue = VecDeque::new();
    for node in h.successors(&DagNode::Source) {
        if let DagNode::Key(k) = node {
            parent.insert(k, None);
            queue.push_back(k);
        }
    }
    // Groups already expanded, by (start, left color, segment color).
    let mut expanded = vec![false; (n + 1) * 12];
    while let Some(k) = queue.pop_front() {
        let Some(c3) = k.c3 else {
            let mut path = vec![k];
            while let Some(p) = parent[path.last().expect("non-empty")] {
                path.push(p);
            }
            path.reverse();
            return Some(path);
        };
        let slot = k.j * 12 + usize::from(k.c2.get()) * 3 + usize::from(c3.get()) - 4;
        if std::mem::replace(&mut expanded[slot], true) {
            continue;
        }
        for m in h.group(k.j + 1, Some(k.c2), c3) {
            if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(m) {
                e.insert(Some(k));
                queue.push_back(m);
            }
        }
    }
    None
}
