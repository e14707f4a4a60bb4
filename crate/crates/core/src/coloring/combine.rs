use crate::color::{Color, Coloring, ListAssignment};
use crate::error::InternalError;
use crate::graph::BipartiteGraph;

use super::subproblem::SubproblemResult;

/// Union of the partial colorings along an s–t path.
///
/// Vertices shared by two results must agree. Y-vertices in no result
/// (isolated ones) take the smallest color of their list.
pub fn combine(g: &BipartiteGraph, l: &ListAssignment, path: &[SubproblemResult]) -> Result<Coloring, InternalError> {
    let mut x: Vec<Option<Color>> = vec![None; g.x_count()];
    let mut y: Vec<Option<Color>> = vec![None; g.y_count()];
    for r in path {
        let pc = r
            .coloring
            .as_ref()
            .ok_or_else(|| InternalError::new(format!("{} on the path is not valid", r.key)))?;
        let parts = [(&pc.x, &mut x, g.x_ids()), (&pc.y, &mut y, g.y_ids())];
        for (colored, slots, ids) in parts {
            for &(v, c) in colored {
                match slots[v].replace(c) {
                    Some(old) if old != c => {
                        return Err(InternalError::new(format!(
                            "{:?} colored {old} and {c} by adjacent segments",
                            ids[v]
                        )))
                    }
                    _ => {}
                }
            }
        }
    }
    for (v, slot) in y.iter_mut().enumerate() {
        if slot.is_none() && g.y_neighbors(v).is_empty() {
            *slot = l.y[v].min();
        }
    }
    let missing =
        |ids: &[String], slots: &[Option<Color>]| slots.iter().position(Option::is_none).map(|v| ids[v].clone());
    if let Some(id) = missing(g.x_ids(), &x).or_else(|| missing(g.y_ids(), &y)) {
        return Err(InternalError::new(format!("{id:?} left uncolored")));
    }
    Ok(Coloring {
        x: x.into_iter().flatten().collect(),
        y: y.into_iter().flatten().collect(),
    })
}
