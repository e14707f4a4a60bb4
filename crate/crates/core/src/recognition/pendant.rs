//! Removal of X-vertices whose Y-neighbors are all pendant.

use crate::graph::BipartiteGraph;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PendantLog {
    /// Removed X-ids, in removal order.
    pub removed: Vec<String>,
    /// Y-ids dropped afterwards for having degree 0 or 1.
    pub dropped_y: Vec<String>,
}

impl PendantLog {
    pub fn is_empty(&self) -> bool {
        self.removed.is_empty() && self.dropped_y.is_empty()
    }
}

/// Repeatedly removes X-vertices all of whose Y-neighbors have degree 1,
/// then drops every Y-vertex left with degree at most 1.
pub fn remove_pendant_only(g1: &BipartiteGraph) -> (BipartiteGraph, PendantLog) {
    let mut deg: Vec<usize> = (0..g1.y_count()).map(|y| g1.y_neighbors(y).len()).collect();
    let mut keep_x = vec![true; g1.x_count()];
    let mut log = PendantLog::default();
    let mut changed = true;
    while changed {
        changed = false;
        for (x, keep) in keep_x.iter_mut().enumerate() {
            if *keep && g1.x_neighbors(x).iter().all(|&y| deg[y] == 1) {
                *keep = false;
                for &y in g1.x_neighbors(x) {
                    deg[y] -= 1;
                }
                log.removed.push(g1.x_id(x).to_owned());
                changed = true;
            }
        }
    }
    let keep_y: Vec<bool> = deg.iter().map(|&d| d >= 2).collect();
    log.dropped_y = (0..g1.y_count())
        .filter(|&y| !keep_y[y])
        .map(|y| g1.y_id(y).to_owned())
        .collect();
    if log.is_empty() {
        return (g1.clone(), log);
    }
    (g1.induced(&keep_x, &keep_y), log)
}
