//! Caterpillars over X: an ordered backbone plus leaves hanging off backbone vertices.

use thiserror::Error;

use crate::graph::BipartiteGraph;

/// A caterpillar T = (X, F) given by ids.
///
/// `leaves[k]` are the leaves attached to `backbone[k]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Caterpillar {
    pub backbone: Vec<String>,
    pub leaves: Vec<Vec<String>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverageError {
    #[error("caterpillar vertex {0:?} is not an X-vertex of the graph")]
    UnknownVertex(String),
    #[error("X-vertex {0:?} appears more than once in the caterpillar")]
    Repeated(String),
    #[error("X-vertex {0:?} is missing from the caterpillar")]
    Missing(String),
    #[error("leaf table has {leaves} entries for a backbone of length {backbone}")]
    Shape { backbone: usize, leaves: usize },
}

impl Caterpillar {
    /// A bare path with no leaves.
    pub fn path<S: Into<String>>(backbone: impl IntoIterator<Item = S>) -> Self {
        let backbone: Vec<String> = backbone.into_iter().map(Into::into).collect();
        let leaves = vec![Vec::new(); backbone.len()];
        Caterpillar { backbone, leaves }
    }

    pub fn len(&self) -> usize {
        self.backbone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backbone.is_empty()
    }

    pub fn vertex_count(&self) -> usize {
        self.backbone.len() + self.leaves.iter().map(Vec::len).sum::<usize>()
    }

    /// Attaches `leaf` to the backbone vertex `anchor`; false if `anchor` is not on the backbone.
    pub fn attach(&mut self, anchor: &str, leaf: impl Into<String>) -> bool {
        match self.backbone_position(anchor) {
            Some(k) => {
                self.leaves[k].push(leaf.into());
                true
            }
            None => false,
        }
    }

    pub fn backbone_position(&self, id: &str) -> Option<usize> {
        self.backbone.iter().position(|b| b == id)
    }

    /// The backbone vertex a leaf hangs from.
    pub fn anchor_of(&self, leaf: &str) -> Option<&str> {
        self.leaves
            .iter()
            .position(|ls| ls.iter().any(|l| l == leaf))
            .map(|k| self.backbone[k].as_str())
    }

    /// B_{i,j} for 1-based inclusive bounds.
    pub fn segment(&self, i: usize, j: usize) -> &[String] {
        &self.backbone[i - 1..j]
    }

    /// L_{i,j} for 1-based inclusive bounds.
    pub fn segment_leaves(&self, i: usize, j: usize) -> impl Iterator<Item = &String> {
        self.leaves[i - 1..j].iter().flatten()
    }

    /// Resolves ids against `g` and checks that the caterpillar covers exactly X.
    pub fn layout(&self, g: &BipartiteGraph) -> Result<Layout, CoverageError> {
        if self.leaves.len() != self.backbone.len() {
            return Err(CoverageError::Shape {
                backbone: self.backbone.len(),
                leaves: self.leaves.len(),
            });
        }
        let mut seen = vec![false; g.x_count()];
        let mut resolve = |id: &String| -> Result<usize, CoverageError> {
            let x = g.x_index(id).ok_or_else(|| CoverageError::UnknownVertex(id.clone()))?;
            if std::mem::replace(&mut seen[x], true) {
                return Err(CoverageError::Repeated(id.clone()));
            }
            Ok(x)
        };
        let backbone = self.backbone.iter().map(&mut resolve).collect::<Result<Vec<_>, _>>()?;
        let leaves = self
            .leaves
            .iter()
            .map(|ls| ls.iter().map(&mut resolve).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(x) = seen.iter().position(|s| !s) {
            return Err(CoverageError::Missing(g.x_id(x).to_owned()));
        }
        Ok(Layout::new(g.x_count(), backbone, leaves))
    }
}

/// Where an X-vertex sits in a caterpillar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Place {
    /// Backbone position, 0-based.
    Backbone(usize),
    /// Leaf of the backbone vertex at this 0-based position.
    Leaf(usize),
}

/// Index form of a caterpillar resolved against a graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub backbone: Vec<usize>,
    pub leaves: Vec<Vec<usize>>,
    pub place: Vec<Place>,
}

impl Layout {
    pub(crate) fn new(x_count: usize, backbone: Vec<usize>, leaves: Vec<Vec<usize>>) -> Self {
        let mut place = vec![Place::Backbone(usize::MAX); x_count];
        for (k, &b) in backbone.iter().enumerate() {
            place[b] = Place::Backbone(k);
        }
        for (k, ls) in leaves.iter().enumerate() {
            for &l in ls {
                place[l] = Place::Leaf(k);
            }
        }
        Layout {
            backbone,
            leaves,
            place,
        }
    }

    pub fn len(&self) -> usize {
        self.backbone.len()
    }

    pub fn is_empty(&self) -> bool {
        self.backbone.is_empty()
    }

    /// Tree parent of `x`: the previous backbone vertex, or the anchor of a leaf.
    pub fn parent(&self, x: usize) -> Option<usize> {
        match self.place[x] {
            Place::Backbone(0) => None,
            Place::Backbone(k) => Some(self.backbone[k - 1]),
            Place::Leaf(k) => Some(self.backbone[k]),
        }
    }

    pub fn to_caterpillar(&self, g: &BipartiteGraph) -> Caterpillar {
        Caterpillar {
            backbone: self.backbone.iter().map(|&x| g.x_id(x).to_owned()).collect(),
            leaves: self
                .leaves
                .iter()
                .map(|ls| ls.iter().map(|&x| g.x_id(x).to_owned()).collect())
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph() -> BipartiteGraph {
        BipartiteGraph::new(["x1", "x2", "x3"], ["y1"], [("x1", "y1")]).unwrap()
    }

    #[test]
    fn layout_places_vertices() {
        let t = Caterpillar {
            backbone: vec!["x2".into(), "x1".into()],
            leaves: vec![vec![], vec!["x3".into()]],
        };
        let lay = t.layout(&graph()).unwrap();
        assert_eq!(lay.backbone, vec![1, 0]);
        assert_eq!(lay.place[2], Place::Leaf(1));
        assert_eq!(lay.parent(0), Some(1));
        assert_eq!(lay.parent(1), None);
        assert_eq!(lay.parent(2), Some(0));
        assert_eq!(lay.to_caterpillar(&graph()), t);
        assert_eq!(t.anchor_of("x3"), Some("x1"));
        assert_eq!(t.segment(1, 2).len(), 2);
        assert_eq!(t.segment_leaves(2, 2).count(), 1);
    }

    #[test]
    fn coverage_errors() {
        let g = graph();
        assert_eq!(
            Caterpillar::path(["x1", "x2"]).layout(&g).unwrap_err(),
            CoverageError::Missing("x3".into())
        );
        assert_eq!(
            Caterpillar::path(["x1", "x2", "x3", "x1"]).layout(&g).unwrap_err(),
            CoverageError::Repeated("x1".into())
        );
        assert_eq!(
            Caterpillar::path(["x1", "y1"]).layout(&g).unwrap_err(),
            CoverageError::UnknownVertex("y1".into())
        );
    }
}
