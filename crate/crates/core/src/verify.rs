//! Verifiers that gate every algorithmic output.

use thiserror::Error;

use crate::caterpillar::{Caterpillar, CoverageError, Layout};
use crate::color::{Coloring, ListAssignment};
use crate::graph::{BipartiteGraph, Vertex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error(transparent)]
    Coverage(#[from] CoverageError),
    #[error("{what} covers {got} vertices, graph has {expected}")]
    Shape {
        what: &'static str,
        got: usize,
        expected: usize,
    },
}

/// Outcome of a verifier; a rejection carries a checkable witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict<W> {
    Accept,
    Reject(W),
}

impl<W> Verdict<W> {
    pub fn is_accept(&self) -> bool {
        matches!(self, Verdict::Accept)
    }
}

/// Why a coloring was rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColoringWitness {
    /// The vertex's color is not in its list.
    Vertex(Vertex),
    /// Both endpoints `(x, y)` share a color.
    Edge(usize, usize),
}

/// Checks that every non-empty N(y) induces a subtree of `t`.
///
/// The witness is the first violating y in declaration order.
pub fn verify_caterpillar_representation(g: &BipartiteGraph, t: &Caterpillar) -> Result<Verdict<usize>, VerifyError> {
    let layout = t.layout(g)?;
    Ok(match first_violation(g, &layout) {
        Some(y) => Verdict::Reject(y),
        None => Verdict::Accept,
    })
}

/// First y whose neighborhood is disconnected in the tree given by `layout`.
///
/// A vertex set S of a tree is connected iff exactly |S| - 1 tree edges lie
/// inside S, and every tree edge is (x, parent(x)).
pub(crate) fn first_violation(g: &BipartiteGraph, layout: &Layout) -> Option<usize> {
    let mut mark = vec![false; g.x_count()];
    (0..g.y_count()).find(|&y| {
        let ns = g.y_neighbors(y);
        for &x in ns {
            mark[x] = true;
        }
        let inside = ns
            .iter()
            .filter(|&&x| layout.parent(x).is_some_and(|p| mark[p]))
            .count();
        for &x in ns {
            mark[x] = false;
        }
        !ns.is_empty() && inside + 1 != ns.len()
    })
}

/// Checks list membership of every vertex, then every edge.
pub fn verify_coloring(
    g: &BipartiteGraph,
    l: &ListAssignment,
    c: &Coloring,
) -> Result<Verdict<ColoringWitness>, VerifyError> {
    let vertices = g.x_count() + g.y_count();
    if !l.matches(g) {
        return Err(VerifyError::Shape {
            what: "lists",
            got: l.x.len() + l.y.len(),
            expected: vertices,
        });
    }
    if !c.matches(g) {
        return Err(VerifyError::Shape {
            what: "coloring",
            got: c.x.len() + c.y.len(),
            expected: vertices,
        });
    }
    if let Some(v) = g.vertices().find(|&v| !l.get(v).contains(c.get(v))) {
        return Ok(Verdict::Reject(ColoringWitness::Vertex(v)));
    }
    if let Some(&(x, y)) = g.edges().iter().find(|&&(x, y)| c.x[x] == c.y[y]) {
        return Ok(Verdict::Reject(ColoringWitness::Edge(x, y)));
    }
    Ok(Verdict::Accept)
}
