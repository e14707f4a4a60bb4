//! Recognition of caterpillar-convex bipartite graphs.
//!
//! The pipeline alternates twin removal and pendant-only removal until
//! neither changes the graph, builds the containment digraph on what is
//! left, orders its sinks into a backbone with a consecutive-ones solver,
//! hangs the remaining vertices as leaves, and finally undoes the
//! reductions. The result is checked against the input before it is
//! returned.

pub mod assemble;
pub mod c1p;
pub mod containment;
pub mod pendant;
pub mod twins;

use std::fmt;

use crate::caterpillar::Caterpillar;
use crate::error::InternalError;
use crate::graph::BipartiteGraph;
use crate::verify::{verify_caterpillar_representation, Verdict};

pub use assemble::{assemble_caterpillar, backbone_and_leaves, reinsert, LeafUnattachable, Round};
pub use c1p::{order_backbone, order_consecutive, C1pFailure};
pub use containment::{build_containment_dag, ContainmentDag};
pub use pendant::{remove_pendant_only, PendantLog};
pub use twins::{remove_twins, twin_classes, TwinLog};

/// The stage at which recognition gave up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NotConvexReason {
    C1pFailed,
    LeafUnattachable,
}

impl NotConvexReason {
    pub fn as_str(self) -> &'static str {
        match self {
            NotConvexReason::C1pFailed => "c1p-failed",
            NotConvexReason::LeafUnattachable => "leaf-unattachable",
        }
    }
}

impl fmt::Display for NotConvexReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recognition {
    Convex(Caterpillar),
    NotConvex(NotConvexReason),
}

impl Recognition {
    pub fn is_convex(&self) -> bool {
        matches!(self, Recognition::Convex(_))
    }

    pub fn caterpillar(&self) -> Option<&Caterpillar> {
        match self {
            Recognition::Convex(t) => Some(t),
            Recognition::NotConvex(_) => None,
        }
    }
}

/// The reduced graphs and the trace needed to undo the reductions.
#[derive(Debug, Clone)]
pub struct Reduction {
    /// The graph after the first twin pass.
    pub g1: BipartiteGraph,
    /// The graph after the last round; twin-free with no pendant-only X-vertex.
    pub g2: BipartiteGraph,
    pub rounds: Vec<Round>,
}

/// Runs twin and pendant-only removal to a fixpoint.
///
/// Dropping low-degree Y-vertices can create new twins, so a single pass of
/// each is not always enough for the containment digraph to be acyclic.
pub fn reduce(g: &BipartiteGraph) -> Reduction {
    let (g1, twins) = remove_twins(g);
    let (mut cur, pendants) = remove_pendant_only(&g1);
    let mut rounds = vec![Round { twins, pendants }];
    loop {
        let (next, twins) = remove_twins(&cur);
        let (next, pendants) = remove_pendant_only(&next);
        if twins.is_empty() && pendants.is_empty() {
            break;
        }
        rounds.push(Round { twins, pendants });
        cur = next;
    }
    Reduction { g1, g2: cur, rounds }
}

/// Decides caterpillar-convexity, returning a verified representation on success.
pub fn recognize(g: &BipartiteGraph) -> Result<Recognition, InternalError> {
    let reduction = reduce(g);
    let g2 = &reduction.g2;
    let d = build_containment_dag(g2)?;
    let (sinks, rest) = backbone_and_leaves(&d);
    let constraints: Vec<Vec<usize>> = (0..g2.y_count())
        .map(|y| g2.y_neighbors(y).iter().copied().filter(|&x| d.is_sink(x)).collect())
        .collect();
    let ordered = match order_backbone(&sinks, &constraints) {
        Ok(order) => order,
        Err(_) => return Ok(Recognition::NotConvex(NotConvexReason::C1pFailed)),
    };
    let t2 = match assemble_caterpillar(&ordered, &rest, &d) {
        Ok(t) => t,
        Err(_) => return Ok(Recognition::NotConvex(NotConvexReason::LeafUnattachable)),
    };
    let t = reinsert(&t2, &reduction.rounds);
    match verify_caterpillar_representation(g, &t) {
        Ok(Verdict::Accept) => Ok(Recognition::Convex(t)),
        Ok(Verdict::Reject(y)) => Err(InternalError::new(format!(
            "assembled caterpillar does not represent N({})",
            g.y_id(y)
        ))),
        Err(e) => Err(InternalError::new(format!("assembled caterpillar is malformed: {e}"))),
    }
}
