//! List-3-Coloring of caterpillar-convex graphs.
//!
//! The backbone is cut into maximal runs of equally colored vertices. Each
//! run with its two neighbor colors is a subproblem; the valid ones form a
//! DAG whose source-to-sink paths are exactly the consistent cuttings, and
//! the colorings along any such path glue into a coloring of the graph.

mod combine;
mod dag;
mod key;
mod subproblem;
mod sweep;
mod twosat;

use thiserror::Error;

use crate::caterpillar::{Caterpillar, CoverageError, Layout};
use crate::color::{Color, Coloring, ListAssignment};
use crate::error::InternalError;
use crate::graph::BipartiteGraph;
use crate::recognition::{recognize, NotConvexReason, Recognition};
use crate::verify::{first_violation, verify_coloring, Verdict};

pub use combine::combine;
pub use dag::{build_subproblem_dag, find_st_path, DagNode, SubproblemDag, ValidityTable};
pub use key::SubproblemKey;
pub use subproblem::{
    solve_subproblem, solve_subproblem_traced, subproblem_graph, verify_subproblem_coloring, PartialColoring,
    SubproblemError, SubproblemResult,
};
pub use twosat::{two_list_color, Lit, TwoSat};

/// How the validity of all keys is decided. Both give the same table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    /// One incremental sweep per left end, about O(n²·|G|) overall.
    #[default]
    Sweep,
    /// The propagation solver on every key that passes the backbone list checks.
    PerKey,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColorError {
    #[error("lists do not match the graph")]
    ListShape,
    #[error(transparent)]
    Coverage(#[from] CoverageError),
    #[error("the caterpillar does not represent the graph: N({0}) is not a subtree")]
    NotARepresentation(String),
    #[error("graph is not caterpillar-convex ({})", .0.as_str())]
    NotConvex(NotConvexReason),
    #[error(transparent)]
    Internal(#[from] InternalError),
}

/// Resolves `t` against `g`, or finds a representation when `t` is absent.
fn representation(g: &BipartiteGraph, t: Option<&Caterpillar>) -> Result<Layout, ColorError> {
    let t = match t {
        Some(t) => t.clone(),
        None => match recognize(g)? {
            Recognition::Convex(t) => t,
            Recognition::NotConvex(reason) => return Err(ColorError::NotConvex(reason)),
        },
    };
    let layout = t.layout(g)?;
    if let Some(y) = first_violation(g, &layout) {
        return Err(ColorError::NotARepresentation(g.y_id(y).to_owned()));
    }
    Ok(layout)
}

/// Step (1) of the solver for one key: the backbone lists admit its colors.
fn backbone_admits(layout: &Layout, l: &ListAssignment, key: &SubproblemKey) -> bool {
    let at = |p: usize| l.x[layout.backbone[p]];
    let (i, j) = (key.i - 1, key.j - 1);
    (i..=j).all(|p| at(p).contains(key.c2))
        && key.c1.is_none_or(|c| at(i - 1).contains(c))
        && key.c3.is_none_or(|c| at(j + 1).contains(c))
}

fn table_in_layout(g: &BipartiteGraph, layout: &Layout, l: &ListAssignment, strategy: Strategy) -> ValidityTable {
    match strategy {
        Strategy::Sweep => sweep::sweep_table(g, layout, l),
        Strategy::PerKey => {
            let mut table = ValidityTable::new(layout.len());
            for key in SubproblemKey::all(layout.len()) {
                if backbone_admits(layout, l, &key) && subproblem::solve_in_layout(g, layout, l, &key).is_valid() {
                    table.set(&key, true);
                }
            }
            table
        }
    }
}

/// Validity of every key for the representation `t` of `g`.
pub fn validity_table(
    g: &BipartiteGraph,
    l: &ListAssignment,
    t: &Caterpillar,
    strategy: Strategy,
) -> Result<ValidityTable, ColorError> {
    if !l.matches(g) {
        return Err(ColorError::ListShape);
    }
    let layout = representation(g, Some(t))?;
    Ok(table_in_layout(g, &layout, l, strategy))
}

/// A proper list coloring from the lists `l`, or `None` if there is none.
///
/// Without `t`, a representation is recognized first.
pub fn list3color(
    g: &BipartiteGraph,
    l: &ListAssignment,
    t: Option<&Caterpillar>,
) -> Result<Option<Coloring>, ColorError> {
    list3color_with(g, l, t, Strategy::default())
}

pub fn list3color_with(
    g: &BipartiteGraph,
    l: &ListAssignment,
    t: Option<&Caterpillar>,
    strategy: Strategy,
) -> Result<Option<Coloring>, ColorError> {
    if !l.matches(g) {
        return Err(ColorError::ListShape);
    }
    let layout = representation(g, t)?;
    let isolated_dead = (0..g.y_count()).any(|y| g.y_neighbors(y).is_empty() && l.y[y].is_empty());
    if isolated_dead {
        return Ok(None);
    }
    let coloring = if layout.is_empty() {
        let y: Option<Vec<Color>> = l.y.iter().map(|s| s.min()).collect();
        Coloring {
            x: Vec::new(),
            y: y.ok_or_else(|| InternalError::new("isolated Y-vertex with an empty list"))?,
        }
    } else {
        let h = SubproblemDag::from_table(table_in_layout(g, &layout, l, strategy));
        let Some(path) = find_st_path(&h) else {
            return Ok(None);
        };
        let results: Vec<SubproblemResult> = path
            .iter()
            .map(|key| subproblem::solve_in_layout(g, &layout, l, key))
            .collect();
        if let Some(r) = results.iter().find(|r| !r.is_valid()) {
            return Err(InternalError::new(format!("{} was marked valid but has no solution", r.key)).into());
        }
        combine(g, l, &results)?
    };
    match verify_coloring(g, l, &coloring) {
        Ok(Verdict::Accept) => Ok(Some(coloring)),
        Ok(Verdict::Reject(w)) => Err(InternalError::new(format!("combined coloring rejected at {w:?}")).into()),
        Err(e) => Err(InternalError::new(format!("combined coloring malformed: {e}")).into()),
    }
}
