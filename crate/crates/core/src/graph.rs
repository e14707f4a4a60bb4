//! The bipartite graph G = (X ∪ Y, E) with opaque string ids.
//!
//! Vertices are addressed internally by their position in declaration order;
//! every ordering used downstream derives from that order.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("duplicate vertex id {0:?}")]
    DuplicateVertex(String),
    #[error("vertex id {0:?} declared in both X and Y")]
    SharedId(String),
    #[error("edge inside partition: [{0:?}, {1:?}]")]
    EdgeInsidePartition(String, String),
    #[error("edge endpoint {0:?} is not a declared vertex")]
    UnknownVertex(String),
    #[error("edge [{0:?}, {1:?}] must list the X endpoint first")]
    EdgeOrientation(String, String),
    #[error("duplicate edge [{0:?}, {1:?}]")]
    DuplicateEdge(String, String),
}

/// A vertex handle: side plus declaration index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    X(usize),
    Y(usize),
}

#[derive(Clone)]
pub struct BipartiteGraph {
    x_ids: Vec<String>,
    y_ids: Vec<String>,
    x_index: HashMap<String, usize>,
    y_index: HashMap<String, usize>,
    edges: Vec<(usize, usize)>,
    x_adj: Vec<Vec<usize>>,
    y_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    /// Builds and validates a graph from ids and `(x, y)` edge pairs.
    pub fn new<S: AsRef<str>>(
        x_ids: impl IntoIterator<Item = S>,
        y_ids: impl IntoIterator<Item = S>,
        edges: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self, GraphError> {
        let x_ids: Vec<String> = x_ids.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let y_ids: Vec<String> = y_ids.into_iter().map(|s| s.as_ref().to_owned()).collect();
        let x_index = index_ids(&x_ids)?;
        let y_index = index_ids(&y_ids)?;
        if let Some(shared) = x_ids.iter().find(|id| y_index.contains_key(*id)) {
            return Err(GraphError::SharedId(shared.clone()));
        }
        let mut pairs = Vec::new();
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let pair = match (
                x_index.get(a),
                y_index.get(b),
                y_index.contains_key(a),
                x_index.contains_key(b),
            ) {
                (Some(&x), Some(&y), _, _) => (x, y),
                (Some(_), None, _, true) | (None, Some(_), true, _) => {
                    return Err(GraphError::EdgeInsidePartition(a.into(), b.into()))
                }
                (None, None, true, true) => return Err(GraphError::EdgeOrientation(a.into(), b.into())),
                (None, _, false, _) => return Err(GraphError::UnknownVertex(a.into())),
                (_, None, _, false) => return Err(GraphError::UnknownVertex(b.into())),
            };
            pairs.push(pair);
        }
        let mut g = Self::assemble(x_ids, y_ids, x_index, y_index, pairs);
        g.check_duplicate_edges()?;
        Ok(g)
    }

    /// Builds a graph from ids and already-resolved index pairs.
    ///
    /// Panics if an index is out of range or an edge repeats; callers derive
    /// these from a graph that already passed validation.
    pub(crate) fn from_parts(x_ids: Vec<String>, y_ids: Vec<String>, edges: Vec<(usize, usize)>) -> Self {
        let x_index = index_ids(&x_ids).expect("ids come from a validated graph");
        let y_index = index_ids(&y_ids).expect("ids come from a validated graph");
        let mut g = Self::assemble(x_ids, y_ids, x_index, y_index, edges);
        g.check_duplicate_edges().expect("edges come from a validated graph");
        g
    }

    fn assemble(
        x_ids: Vec<String>,
        y_ids: Vec<String>,
        x_index: HashMap<String, usize>,
        y_index: HashMap<String, usize>,
        edges: Vec<(usize, usize)>,
    ) -> Self {
        let mut x_adj = vec![Vec::new(); x_ids.len()];
        let mut y_adj = vec![Vec::new(); y_ids.len()];
        for &(x, y) in &edges {
            x_adj[x].push(y);
            y_adj[y].push(x);
        }
        for list in x_adj.iter_mut().chain(y_adj.iter_mut()) {
            list.sort_unstable();
        }
        BipartiteGraph {
            x_ids,
            y_ids,
            x_index,
            y_index,
            edges,
            x_adj,
            y_adj,
        }
    }

    fn check_duplicate_edges(&mut self) -> Result<(), GraphError> {
        for (x, ys) in self.x_adj.iter().enumerate() {
            if let Some(w) = ys.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(
                    self.x_ids[x].clone(),
                    self.y_ids[w[0]].clone(),
                ));
            }
        }
        Ok(())
    }

    pub fn empty() -> Self {
        Self::from_parts(Vec::new(), Vec::new(), Vec::new())
    }

    pub fn x_count(&self) -> usize {
        self.x_ids.len()
    }

    pub fn y_count(&self) -> usize {
        self.y_ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn x_ids(&self) -> &[String] {
        &self.x_ids
    }

    pub fn y_ids(&self) -> &[String] {
        &self.y_ids
    }

    pub fn x_id(&self, x: usize) -> &str {
        &self.x_ids[x]
    }

    pub fn y_id(&self, y: usize) -> &str {
        &self.y_ids[y]
    }

    pub fn id(&self, v: Vertex) -> &str {
        match v {
            Vertex::X(i) => &self.x_ids[i],
            Vertex::Y(i) => &self.y_ids[i],
        }
    }

    pub fn x_index(&self, id: &str) -> Option<usize> {
        self.x_index.get(id).copied()
    }

    pub fn y_index(&self, id: &str) -> Option<usize> {
        self.y_index.get(id).copied()
    }

    pub fn vertex(&self, id: &str) -> Option<Vertex> {
        self.x_index(id)
            .map(Vertex::X)
            .or_else(|| self.y_index(id).map(Vertex::Y))
    }

    /// Edges as `(x, y)` index pairs in declaration order.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Y-neighbors of `x`, ascending.
    pub fn x_neighbors(&self, x: usize) -> &[usize] {
        &self.x_adj[x]
    }

    /// X-neighbors of `y`, ascending.
    pub fn y_neighbors(&self, y: usize) -> &[usize] {
        &self.y_adj[y]
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.x_adj[x].binary_search(&y).is_ok()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.x_count())
            .map(Vertex::X)
            .chain((0..self.y_count()).map(Vertex::Y))
    }

    /// Subgraph induced by the kept vertices; declaration order is preserved.
    pub fn induced(&self, keep_x: &[bool], keep_y: &[bool]) -> BipartiteGraph {
        self.filtered(keep_x, keep_y, |_, _| true)
    }

    /// Like [`induced`](Self::induced), additionally dropping edges rejected by `keep_edge`.
    pub(crate) fn filtered(
        &self,
        keep_x: &[bool],
        keep_y: &[bool],
        keep_edge: impl Fn(usize, usize) -> bool,
    ) -> BipartiteGraph {
        let remap = |keep: &[bool]| -> Vec<Option<usize>> {
            let mut next = 0;
            keep.iter()
                .map(|&k| {
                    k.then(|| {
                        next += 1;
                        next - 1
                    })
                })
                .collect()
        };
        let xm = remap(keep_x);
        let ym = remap(keep_y);
        let x_ids = self
            .x_ids
            .iter()
            .zip(keep_x)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s.clone())
            .collect();
        let y_ids = self
            .y_ids
            .iter()
            .zip(keep_y)
            .filter(|(_, &k)| k)
            .map(|(s, _)| s.clone())
            .collect();
        let edges = self
            .edges
            .iter()
            .filter(|&&(x, y)| keep_edge(x, y))
            .filter_map(|&(x, y)| Some((xm[x]?, ym[y]?)))
            .collect();
        Self::from_parts(x_ids, y_ids, edges)
    }

    /// Same vertex ids, shuffled; used for relabeling checks.
    pub fn relabeled(&self, x_names: &[String], y_names: &[String]) -> BipartiteGraph {
        Self::from_parts(x_names.to_vec(), y_names.to_vec(), self.edges.clone())
    }
}

fn index_ids(ids: &[String]) -> Result<HashMap<String, usize>, GraphError> {
    let mut index = HashMap::with_capacity(ids.len());
    for (i, id) in ids.iter().enumerate() {
        if index.insert(id.clone(), i).is_some() {
            return Err(GraphError::DuplicateVertex(id.clone()));
        }
    }
    Ok(index)
}

impl PartialEq for BipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.x_ids == other.x_ids && self.y_ids == other.y_ids && self.edges == other.edges
    }
}

impl Eq for BipartiteGraph {}

impl fmt::Debug for BipartiteGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges
            .iter()
            .map(|&(x, y)| (self.x_ids[x].as_str(), self.y_ids[y].as_str()))
            .collect();
        f.debug_struct("BipartiteGraph")
            .field("x", &self.x_ids)
            .field("y", &self.y_ids)
            .field("edges", &edges)
            .finish()
    }
}
