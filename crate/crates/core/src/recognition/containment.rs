//! The containment digraph D on the reduced X-side.

use fixedbitset::FixedBitSet;

use crate::error::InternalError;
use crate::graph::BipartiteGraph;

/// Arc `(a, b)` iff N(a) ⊆ N(b) and a ≠ b. Nodes are indexed like the graph they came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContainmentDag {
    ids: Vec<String>,
    out: Vec<Vec<usize>>,
}

impl ContainmentDag {
    /// A digraph with explicit arcs; no containment or acyclicity is implied.
    pub fn from_arcs(ids: Vec<String>, arcs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut out = vec![Vec::new(); ids.len()];
        for (a, b) in arcs {
            out[a].push(b);
        }
        for list in &mut out {
            list.sort_unstable();
            list.dedup();
        }
        ContainmentDag { ids, out }
    }

    pub fn node_count(&self) -> usize {
        self.ids.len()
    }

    pub fn id(&self, node: usize) -> &str {
        &self.ids[node]
    }

    /// Out-neighbors of `node`, ascending.
    pub fn successors(&self, node: usize) -> &[usize] {
        &self.out[node]
    }

    pub fn has_arc(&self, a: usize, b: usize) -> bool {
        self.out[a].binary_search(&b).is_ok()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(a, bs)| bs.iter().map(move |&b| (a, b)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn is_sink(&self, node: usize) -> bool {
        self.out[node].is_empty()
    }

    /// Kahn's algorithm; true iff every node gets removed.
    pub fn is_acyclic(&self) -> bool {
        let n = self.node_count();
        let mut indeg = vec![0usize; n];
        for (_, b) in self.arcs() {
            indeg[b] += 1;
        }
        let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = stack.pop() {
            seen += 1;
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    stack.push(w);
                }
            }
        }
        seen == n
    }

    pub fn is_transitive(&self) -> bool {
        self.arcs()
            .all(|(a, b)| self.out[b].iter().all(|&c| c == a || self.has_arc(a, c)))
    }
}

/// Builds D for a twin-free graph.
///
/// Twins would produce a 2-cycle, so a cycle means the reduction upstream is broken.
pub fn build_containment_dag(g2: &BipartiteGraph) -> Result<ContainmentDag, InternalError> {
    let n = g2.x_count();
    let sets: Vec<FixedBitSet> = (0..n)
        .map(|x| {
            let mut s = FixedBitSet::with_capacity(g2.y_count());
            s.extend(g2.x_neighbors(x).iter().copied());
            s
        })
        .collect();
    let mut arcs = Vec::new();
    for a in 0..n {
        for b in 0..n {
            if a != b && sets[a].is_subset(&sets[b]) {
                arcs.push((a, b));
            }
        }
    }
    let d = ContainmentDag::from_arcs(g2.x_ids().to_vec(), arcs);
    if !d.is_acyclic() {
        return Err(InternalError::new(
            "containment digraph has a cycle; twins survived reduction",
        ));
    }
    Ok(d)
}
