//! The segment subproblem: its induced graph and the exact propagation solver.

use std::collections::VecDeque;

use thiserror::Error;

use crate::caterpillar::{Caterpillar, CoverageError, Layout};
use crate::color::{Color, ColorSet, ListAssignment};
use crate::graph::BipartiteGraph;

use super::key::SubproblemKey;
use super::twosat::two_list_color;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubproblemError {
    #[error(transparent)]
    Coverage(#[from] CoverageError),
    #[error("{key} is not a key for a backbone of length {n}")]
    KeyOutOfRange { key: SubproblemKey, n: usize },
    #[error("lists do not match the graph")]
    ListShape,
}

/// Colors of the vertices of G_S, by global index, ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialColoring {
    pub x: Vec<(usize, Color)>,
    pub y: Vec<(usize, Color)>,
}

/// `coloring` is present exactly when the subproblem is solvable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubproblemResult {
    pub key: SubproblemKey,
    pub coloring: Option<PartialColoring>,
}

impl SubproblemResult {
    pub fn is_valid(&self) -> bool {
        self.coloring.is_some()
    }
}

/// Vertex sets of G_S by global index, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Scope {
    pub xs: Vec<usize>,
    pub ys: Vec<usize>,
}

/// B_{i-1..j+1} ∪ L_{i..j} and the Y-vertices meeting B_{i..j} ∪ L_{i..j}.
pub(crate) fn scope(g: &BipartiteGraph, layout: &Layout, key: &SubproblemKey) -> Scope {
    let n = layout.len();
    let (i, j) = (key.i - 1, key.j - 1);
    let mut core = vec![false; g.x_count()];
    for p in i..=j {
        core[layout.backbone[p]] = true;
        for &l in &layout.leaves[p] {
            core[l] = true;
        }
    }
    let ys: Vec<usize> = (0..g.y_count())
        .filter(|&y| g.y_neighbors(y).iter().any(|&x| core[x]))
        .collect();
    let mut xs: Vec<usize> = (0..g.x_count()).filter(|&x| core[x]).collect();
    if i > 0 {
        xs.push(layout.backbone[i - 1]);
    }
    if j + 1 < n {
        xs.push(layout.backbone[j + 1]);
    }
    xs.sort_unstable();
    Scope { xs, ys }
}

fn check_key(layout: &Layout, key: &SubproblemKey) -> Result<(), SubproblemError> {
    if key.is_valid_for(layout.len()) {
        Ok(())
    } else {
        Err(SubproblemError::KeyOutOfRange {
            key: *key,
            n: layout.len(),
        })
    }
}

/// G_S for `key`: the subgraph induced by its scope.
pub fn subproblem_graph(
    g: &BipartiteGraph,
    t: &Caterpillar,
    key: &SubproblemKey,
) -> Result<BipartiteGraph, SubproblemError> {
    let layout = t.layout(g)?;
    check_key(&layout, key)?;
    let s = scope(g, &layout, key);
    let mut keep_x = vec![false; g.x_count()];
    let mut keep_y = vec![false; g.y_count()];
    s.xs.iter().for_each(|&x| keep_x[x] = true);
    s.ys.iter().for_each(|&y| keep_y[y] = true);
    Ok(g.induced(&keep_x, &keep_y))
}

/// Solves `key` with the propagation procedure.
pub fn solve_subproblem(
    g: &BipartiteGraph,
    t: &Caterpillar,
    l: &ListAssignment,
    key: &SubproblemKey,
) -> Result<SubproblemResult, SubproblemError> {
    solve_subproblem_traced(g, t, l, key).map(|(r, _)| r)
}

/// Like [`solve_subproblem`], also returning the lists of G_S (X then Y,
/// ascending) initially, after the assignment and after each pruning step.
pub fn solve_subproblem_traced(
    g: &BipartiteGraph,
    t: &Caterpillar,
    l: &ListAssignment,
    key: &SubproblemKey,
) -> Result<(SubproblemResult, Vec<Vec<ColorSet>>), SubproblemError> {
    if !l.matches(g) {
        return Err(SubproblemError::ListShape);
    }
    let layout = t.layout(g)?;
    check_key(&layout, key)?;
    let mut trace = Vec::new();
    let coloring = Solver::new(g, &layout, l, key).run(Some(&mut trace));
    Ok((SubproblemResult { key: *key, coloring }, trace))
}

/// Solves a key already checked against `layout`.
pub(crate) fn solve_in_layout(
    g: &BipartiteGraph,
    layout: &Layout,
    l: &ListAssignment,
    key: &SubproblemKey,
) -> SubproblemResult {
    SubproblemResult {
        key: *key,
        coloring: Solver::new(g, layout, l, key).run(None),
    }
}

/// Local state over G_S; local ids are X-vertices first, then Y.
struct Solver<'a> {
    layout: &'a Layout,
    key: SubproblemKey,
    scope: Scope,
    adj: Vec<Vec<usize>>,
    list: Vec<ColorSet>,
    color: Vec<Option<Color>>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a BipartiteGraph, layout: &'a Layout, l: &ListAssignment, key: &SubproblemKey) -> Self {
        let scope = scope(g, layout, key);
        let nx = scope.xs.len();
        let mut local_x = vec![usize::MAX; g.x_count()];
        for (k, &x) in scope.xs.iter().enumerate() {
            local_x[x] = k;
        }
        let mut adj = vec![Vec::new(); nx + scope.ys.len()];
        for (k, &y) in scope.ys.iter().enumerate() {
            for &x in g.y_neighbors(y) {
                if local_x[x] != usize::MAX {
                    adj[nx + k].push(local_x[x]);
                    adj[local_x[x]].push(nx + k);
                }
            }
        }
        let list = scope
            .xs
            .iter()
            .map(|&x| l.x[x])
            .chain(scope.ys.iter().map(|&y| l.y[y]))
            .collect();
        let color = vec![None; adj.len()];
        Solver {
            layout,
            key: *key,
            scope,
            adj,
            list,
            color,
        }
    }

    fn nx(&self) -> usize {
        self.scope.xs.len()
    }

    /// Boundary and segment colors for the backbone vertices of G_S.
    fn fixed_colors(&self) -> Vec<(usize, Color)> {
        let (i, j) = (self.key.i - 1, self.key.j - 1);
        let local = |p: usize| {
            let x = self.layout.backbone[p];
            self.scope.xs.binary_search(&x).expect("backbone vertex is in scope")
        };
        let mut fixed: Vec<(usize, Color)> = (i..=j).map(|p| (local(p), self.key.c2)).collect();
        if let Some(c1) = self.key.c1 {
            fixed.push((local(i - 1), c1));
        }
        if let Some(c3) = self.key.c3 {
            fixed.push((local(j + 1), c3));
        }
        fixed
    }

    fn run(mut self, mut trace: Option<&mut Vec<Vec<ColorSet>>>) -> Option<PartialColoring> {
        let mut snapshot = |s: &Self| {
            if let Some(t) = trace.as_deref_mut() {
                t.push(s.list.clone());
            }
        };
        snapshot(&self);
        // (1) list checks, (2) assignment.
        let fixed = self.fixed_colors();
        if fixed.iter().any(|&(v, c)| !self.list[v].contains(c)) {
            return None;
        }
        for &(v, c) in &fixed {
            self.list[v] = ColorSet::single(c);
            self.color[v] = Some(c);
        }
        snapshot(&self);
        // (3) prune Y-lists by colored backbone neighbors.
        for y in self.nx()..self.adj.len() {
            for k in 0..self.adj[y].len() {
                if let Some(c) = self.color[self.adj[y][k]] {
                    self.list[y].remove(c);
                }
            }
        }
        snapshot(&self);
        // (4) unit propagation.
        if (0..self.adj.len()).any(|v| self.color[v].is_none() && self.list[v].is_empty()) {
            return None;
        }
        let mut queue: VecDeque<usize> = (0..self.adj.len())
            .filter(|&v| self.color[v].is_none() && self.list[v].len() == 1)
            .collect();
        if !self.propagate(&mut queue) {
            return None;
        }
        snapshot(&self);
        // (5) a 3-list on Y means its only neighbor is one leaf; drop the largest color.
        for y in self.nx()..self.adj.len() {
            if self.color[y].is_none() && self.list[y].len() == 3 {
                let top = self.list[y].max().expect("non-empty");
                self.list[y].remove(top);
            }
        }
        snapshot(&self);
        // (6) leaves with a full list take c2.
        for x in 0..self.nx() {
            if self.color[x].is_none() && self.list[x].len() == 3 {
                self.list[x] = ColorSet::single(self.key.c2);
                queue.push_back(x);
                if !self.propagate(&mut queue) {
                    return None;
                }
            }
        }
        snapshot(&self);
        // (7) everything left has a 2-list.
        let rest: Vec<usize> = (0..self.adj.len()).filter(|&v| self.color[v].is_none()).collect();
        let mut local = vec![usize::MAX; self.adj.len()];
        for (k, &v) in rest.iter().enumerate() {
            local[v] = k;
        }
        let lists: Vec<ColorSet> = rest.iter().map(|&v| self.list[v]).collect();
        assert!(
            lists.iter().all(|s| s.len() == 2),
            "only 2-lists remain after propagation"
        );
        let edges: Vec<(usize, usize)> = rest
            .iter()
            .filter(|&&v| v < self.nx())
            .flat_map(|&v| {
                self.adj[v]
                    .iter()
                    .filter(|&&w| local[w] != usize::MAX)
                    .map(move |&w| (v, w))
            })
            .map(|(v, w)| (local[v], local[w]))
            .collect();
        let colors = two_list_color(&lists, &edges)?;
        for (k, &v) in rest.iter().enumerate() {
            self.color[v] = Some(colors[k]);
        }
        Some(self.into_partial())
    }

    /// Commits singleton lists from `queue`, pruning neighbors; false on an empty list.
    fn propagate(&mut self, queue: &mut VecDeque<usize>) -> bool {
        while let Some(v) = queue.pop_front() {
            if self.color[v].is_some() {
                continue;
            }
            let Some(c) = self.list[v].single_color() else {
                return false;
            };
            self.color[v] = Some(c);
            for k in 0..self.adj[v].len() {
                let w = self.adj[v][k];
                if self.color[w].is_none() && self.list[w].contains(c) {
                    self.list[w].remove(c);
                    match self.list[w].len() {
                        0 => return false,
                        1 => queue.push_back(w),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn into_partial(self) -> PartialColoring {
        let nx = self.nx();
        let color = |v: usize| self.color[v].expect("every vertex of G_S is colored");
        PartialColoring {
            x: self.scope.xs.iter().enumerate().map(|(k, &x)| (x, color(k))).collect(),
            y: self
                .scope
                .ys
                .iter()
                .enumerate()
                .map(|(k, &y)| (y, color(nx + k)))
                .collect(),
        }
    }
}

/// Checks that `pc` colors exactly G_S, respects lists and the key's
/// boundary and segment colors, and leaves no edge of G_S monochromatic.
pub fn verify_subproblem_coloring(
    g: &BipartiteGraph,
    t: &Caterpillar,
    l: &ListAssignment,
    key: &SubproblemKey,
    pc: &PartialColoring,
) -> Result<bool, SubproblemError> {
    let layout = t.layout(g)?;
    check_key(&layout, key)?;
    let s = scope(g, &layout, key);
    let xs: Vec<usize> = pc.x.iter().map(|&(x, _)| x).collect();
    let ys: Vec<usize> = pc.y.iter().map(|&(y, _)| y).collect();
    if xs != s.xs || ys != s.ys {
        return Ok(false);
    }
    let mut cx = vec![None; g.x_count()];
    for &(x, c) in &pc.x {
        cx[x] = Some(c);
    }
    let (i, j, n) = (key.i - 1, key.j - 1, layout.len());
    let mut expected: Vec<(usize, Color)> = (i..=j).map(|p| (layout.backbone[p], key.c2)).collect();
    if i > 0 {
        expected.extend(key.c1.map(|c| (layout.backbone[i - 1], c)));
    }
    if j + 1 < n {
        expected.extend(key.c3.map(|c| (layout.backbone[j + 1], c)));
    }
    let lists_ok = pc.x.iter().all(|&(x, c)| l.x[x].contains(c)) && pc.y.iter().all(|&(y, c)| l.y[y].contains(c));
    let fixed_ok = expected.iter().all(|&(x, c)| cx[x] == Some(c));
    let edges_ok =
        pc.y.iter()
            .all(|&(y, c)| g.y_neighbors(y).iter().all(|&x| cx[x] != Some(c)));
    Ok(lists_ok && fixed_ok && edges_ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: u8) -> Color {
        Color::new(v).unwrap()
    }

    fn key(i: usize, j: usize, c1: Option<u8>, c2: u8, c3: Option<u8>) -> SubproblemKey {
        SubproblemKey {
            i,
            j,
            c1: c1.map(c),
            c2: c(c2),
            c3: c3.map(c),
        }
    }

    fn two_path() -> (BipartiteGraph, Caterpillar) {
        let g = BipartiteGraph::new(["b1", "b2"], ["y"], [("b1", "y"), ("b2", "y")]).unwrap();
        (g, Caterpillar::path(["b1", "b2"]))
    }

    #[test]
    fn full_span_scope_is_whole_graph() {
        let (g, t) = two_path();
        assert_eq!(subproblem_graph(&g, &t, &key(1, 2, None, 1, None)).unwrap(), g);
        let gs = subproblem_graph(&g, &t, &key(1, 1, None, 1, Some(2))).unwrap();
        assert_eq!((gs.x_count(), gs.y_count()), (2, 1));
    }

    #[test]
    fn one_constraint() {
        let (g, t) = two_path();
        let l = ListAssignment::full(&g);
        let k = key(1, 2, None, 1, None);
        let r = solve_subproblem(&g, &t, &l, &k).unwrap();
        let pc = r.coloring.clone().unwrap();
        assert_ne!(pc.y[0].1, c(1));
        assert!(verify_subproblem_coloring(&g, &t, &l, &k, &pc).unwrap());
    }

    #[test]
    fn segment_color_outside_list_fails_early() {
        let (g, t) = two_path();
        let mut l = ListAssignment::full(&g);
        l.x[1] = ColorSet::single(c(2));
        assert!(!solve_subproblem(&g, &t, &l, &key(1, 2, None, 1, None))
            .unwrap()
            .is_valid());
    }

    #[test]
    fn bad_key_is_rejected() {
        let (g, t) = two_path();
        let l = ListAssignment::full(&g);
        assert!(matches!(
            solve_subproblem(&g, &t, &l, &key(1, 1, None, 1, None)),
            Err(SubproblemError::KeyOutOfRange { .. })
        ));
    }

    #[test]
    fn lists_only_shrink() {
        // A leaf with a pendant neighbor and a shared neighbor.
        let g = BipartiteGraph::new(
            ["b1", "l1", "b2"],
            ["p", "s"],
            [("l1", "p"), ("b1", "s"), ("l1", "s"), ("b2", "s")],
        )
        .unwrap();
        let t = Caterpillar {
            backbone: vec!["b1".into(), "b2".into()],
            leaves: vec![vec!["l1".into()], vec![]],
        };
        let l = ListAssignment::full(&g);
        let (r, trace) = solve_subproblem_traced(&g, &t, &l, &key(1, 1, None, 1, Some(2))).unwrap();
        assert!(r.is_valid());
        for w in trace.windows(2) {
            assert!(w[1].iter().zip(&w[0]).all(|(a, b)| a.is_subset(*b)));
        }
    }
}
