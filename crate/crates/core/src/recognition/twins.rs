//! Twin classes by partition refinement, and twin removal.

use crate::graph::BipartiteGraph;

/// Twin deletions of one reduction round.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TwinLog {
    /// `(deleted, representative)` in deletion order.
    pub deleted: Vec<(String, String)>,
    /// `(kept, private_y)`: a twin kept with only its edge to `private_y`.
    ///
    /// Needed when a class has both a private neighbor (adjacent to exactly
    /// the class) and a shared one: dropping every twin but one would lose
    /// the constraint that the class stays connected among itself.
    pub restricted: Vec<(String, String)>,
}

impl TwinLog {
    pub fn is_empty(&self) -> bool {
        self.deleted.is_empty() && self.restricted.is_empty()
    }
}

/// Partition of X into classes of equal neighborhoods.
///
/// Classes are ordered by their first member, members ascending.
pub fn twin_classes(g: &BipartiteGraph) -> Vec<Vec<usize>> {
    if g.x_count() == 0 {
        return Vec::new();
    }
    let mut classes: Vec<Vec<usize>> = vec![(0..g.x_count()).collect()];
    let mut class_of = vec![0usize; g.x_count()];
    let mut hits = Vec::new();
    let mut in_ny = vec![false; g.x_count()];
    for y in 0..g.y_count() {
        let ns = g.y_neighbors(y);
        for &x in ns {
            in_ny[x] = true;
        }
        hits.clear();
        hits.extend(ns.iter().map(|&x| class_of[x]));
        hits.sort_unstable();
        hits.dedup();
        for &c in &hits {
            let inside = classes[c].iter().filter(|&&x| in_ny[x]).count();
            if inside == classes[c].len() {
                continue;
            }
            let (taken, rest): (Vec<usize>, Vec<usize>) = classes[c].iter().partition(|&&x| in_ny[x]);
            let id = classes.len();
            for &x in &taken {
                class_of[x] = id;
            }
            classes[c] = rest;
            classes.push(taken);
        }
        for &x in ns {
            in_ny[x] = false;
        }
    }
    classes.sort_unstable_by_key(|c| c[0]);
    classes
}

/// Keeps the first member of every twin class and deletes the others.
///
/// A class whose neighbors include both a private y (N(y) equals the class)
/// and a shared y keeps its second member too, restricted to one private
/// edge; see [`TwinLog::restricted`].
pub fn remove_twins(g: &BipartiteGraph) -> (BipartiteGraph, TwinLog) {
    let mut keep_x = vec![true; g.x_count()];
    let mut restricted: Vec<Option<usize>> = vec![None; g.x_count()];
    let mut log = TwinLog::default();
    for class in twin_classes(g).into_iter().filter(|c| c.len() > 1) {
        let rep = class[0];
        let ys = g.x_neighbors(rep);
        let private = ys.iter().copied().find(|&y| g.y_neighbors(y).len() == class.len());
        let shared = ys.iter().any(|&y| g.y_neighbors(y).len() != class.len());
        let mut deleted = &class[1..];
        if let (Some(y), true) = (private, shared) {
            restricted[class[1]] = Some(y);
            log.restricted.push((g.x_id(class[1]).to_owned(), g.y_id(y).to_owned()));
            deleted = &class[2..];
        }
        for &x in deleted {
            keep_x[x] = false;
            log.deleted.push((g.x_id(x).to_owned(), g.x_id(rep).to_owned()));
        }
    }
    if log.is_empty() {
        return (g.clone(), log);
    }
    let keep_y = vec![true; g.y_count()];
    let g1 = g.filtered(&keep_x, &keep_y, |x, y| restricted[x].is_none_or(|p| p == y));
    (g1, log)
}
