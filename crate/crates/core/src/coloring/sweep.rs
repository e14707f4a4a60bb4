//! The validity of every subproblem key, decided by one left-to-right sweep
//! per (i, c1, c2).
//!
//! Fix the segment color c2. Every Y-vertex that meets the segment already
//! loses c2, and whatever is left of its list lies inside the two other
//! colors. A leaf that may take c2 can therefore take it without clashing
//! with anything but its own pendant neighbors, which are folded into the
//! leaf's list first. The remaining leaves must pick from the other two
//! colors, so a Y-vertex with two colors left forces all such leaf
//! neighbors to agree, and one with a single color left forbids it to them.
//! Agreement classes live in a union-find with a mask of allowed colors per
//! class; the instance is solvable exactly when no mask and no list runs
//! empty. Extending j only adds constraints, and the right boundary color
//! c3 only touches the Y-vertices that cross from b_j to b_{j+1}, so each
//! c3 is a cheap query on top of the shared state.

use crate::caterpillar::{Layout, Place};
use crate::color::{Color, ColorSet, ListAssignment};
use crate::graph::BipartiteGraph;

use super::key::SubproblemKey;
use super::ValidityTable;

/// What the sweep needs to know about the graph, computed once.
struct Shape {
    /// Lists minus singleton pendant lists, per leaf.
    leaf_list: Vec<ColorSet>,
    /// Leaves with a pendant Y-vertex whose list is empty.
    leaf_dead: Vec<bool>,
    /// Y-vertices with a backbone neighbor adjacent to each leaf.
    leaf_spans: Vec<Vec<usize>>,
    /// Y-vertices whose leftmost backbone neighbor sits at each position.
    starting: Vec<Vec<usize>>,
    /// Y-vertices adjacent to backbone positions p and p + 1.
    crossing: Vec<Vec<usize>>,
}

impl Shape {
    fn new(g: &BipartiteGraph, layout: &Layout, l: &ListAssignment) -> Self {
        let n = layout.len();
        let mut shape = Shape {
            leaf_list: l.x.clone(),
            leaf_dead: vec![false; g.x_count()],
            leaf_spans: vec![Vec::new(); g.x_count()],
            starting: vec![Vec::new(); n],
            crossing: vec![Vec::new(); n],
        };
        for y in 0..g.y_count() {
            let nbrs = g.y_neighbors(y);
            let span = nbrs
                .iter()
                .filter_map(|&x| match layout.place[x] {
                    Place::Backbone(p) => Some(p),
                    Place::Leaf(_) => None,
                })
                .fold(None, |acc: Option<(usize, usize)>, p| {
                    Some(acc.map_or((p, p), |(lo, hi)| (lo.min(p), hi.max(p))))
                });
            match span {
                Some((lo, hi)) => {
                    shape.starting[lo].push(y);
                    for p in lo..hi {
                        shape.crossing[p].push(y);
                    }
                    for &x in nbrs {
                        if matches!(layout.place[x], Place::Leaf(_)) {
                            shape.leaf_spans[x].push(y);
                        }
                    }
                }
                None => {
                    // In a verified representation this is a single leaf, or nothing.
                    debug_assert!(nbrs.len() <= 1, "a subtree without backbone vertices is one leaf");
                    if let Some(&x) = nbrs.first() {
                        match l.y[y].len() {
                            0 => shape.leaf_dead[x] = true,
                            1 => shape.leaf_list[x] = shape.leaf_list[x].minus(l.y[y]),
                            _ => {}
                        }
                    }
                }
            }
        }
        shape
    }
}

/// Mutable sweep state; entries are (re)initialized when a vertex enters.
struct State {
    cl: Vec<ColorSet>,
    anchor: Vec<Option<usize>>,
    parent: Vec<usize>,
    mask: Vec<ColorSet>,
}

impl State {
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if their masks become disjoint.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[rb] = ra;
            self.mask[ra] = self.mask[ra].intersect(self.mask[rb]);
        }
        !self.mask[ra].is_empty()
    }

    fn forbid(&mut self, x: usize, c: Color) -> bool {
        let r = self.find(x);
        self.mask[r].remove(c);
        !self.mask[r].is_empty()
    }

    /// Lets `y` enter with its list already cut to `cl`.
    fn enter_y(&mut self, y: usize, cl: ColorSet) -> bool {
        self.cl[y] = cl;
        self.anchor[y] = None;
        !cl.is_empty()
    }

    /// Lets leaf `x` enter; false when the core becomes unsolvable.
    fn enter_leaf(&mut self, shape: &Shape, x: usize, c2: Color) -> bool {
        let eff = shape.leaf_list[x];
        if shape.leaf_dead[x] || eff.is_empty() {
            return false;
        }
        if eff.contains(c2) {
            return true;
        }
        self.parent[x] = x;
        self.mask[x] = eff;
        for &y in &shape.leaf_spans[x] {
            let ok = match self.cl[y].len() {
                2 => match self.anchor[y] {
                    Some(a) => self.union(a, x),
                    None => {
                        self.anchor[y] = Some(x);
                        true
                    }
                },
                1 => self.forbid(x, self.cl[y].min().expect("one color")),
                _ => unreachable!("an emptied list stops the sweep"),
            };
            if !ok {
                return false;
            }
        }
        true
    }

    /// Whether the right boundary color `c3` keeps the current core solvable.
    fn accepts(&mut self, crossing: &[usize], c3: Color) -> bool {
        let mut touched: Vec<(usize, ColorSet)> = Vec::new();
        for &y in crossing {
            let left = self.cl[y].without(c3);
            if left.is_empty() {
                return false;
            }
            if self.cl[y].len() == 2 && left.len() == 1 {
                if let Some(a) = self.anchor[y] {
                    let r = self.find(a);
                    let f = left.min().expect("one color");
                    let slot = match touched.iter().position(|&(t, _)| t == r) {
                        Some(k) => k,
                        None => {
                            touched.push((r, self.mask[r]));
                            touched.len() - 1
                        }
                    };
                    touched[slot].1.remove(f);
                    if touched[slot].1.is_empty() {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Fills the validity of every key; `layout` must represent `g`.
pub(crate) fn sweep_table(g: &BipartiteGraph, layout: &Layout, l: &ListAssignment) -> ValidityTable {
    let n = layout.len();
    let mut table = ValidityTable::new(n);
    let shape = Shape::new(g, layout, l);
    let mut state = State {
        cl: vec![ColorSet::EMPTY; g.y_count()],
        anchor: vec![None; g.y_count()],
        parent: (0..g.x_count()).collect(),
        mask: vec![ColorSet::EMPTY; g.x_count()],
    };
    let blist = |p: usize| l.x[layout.backbone[p]];
    for i in 0..n {
        let lefts: Vec<Option<Color>> = if i == 0 {
            vec![None]
        } else {
            Color::ALL
                .iter()
                .copied()
                .filter(|&c| blist(i - 1).contains(c))
                .map(Some)
                .collect()
        };
        for c1 in lefts {
            for c2 in Color::ALL {
                if c1 == Some(c2) {
                    continue;
                }
                let mut ok = true;
                if i > 0 {
                    let c1 = c1.expect("left boundary");
                    for &y in &shape.crossing[i - 1] {
                        ok &= state.enter_y(y, l.y[y].without(c2).without(c1));
                    }
                }
                for j in i..n {
                    if !blist(j).contains(c2) {
                        break;
                    }
                    for &y in &shape.starting[j] {
                        ok &= state.enter_y(y, l.y[y].without(c2));
                    }
                    if ok {
                        for &x in &layout.leaves[j] {
                            if !state.enter_leaf(&shape, x, c2) {
                                ok = false;
                                break;
                            }
                        }
                    }
                    if !ok {
                        break;
                    }
                    let key = SubproblemKey {
                        i: i + 1,
                        j: j + 1,
                        c1,
                        c2,
                        c3: None,
                    };
                    if j + 1 == n {
                        table.set(&key, true);
                        continue;
                    }
                    for c3 in Color::ALL {
                        if c3 != c2 && blist(j + 1).contains(c3) && state.accepts(&shape.crossing[j], c3) {
                            table.set(&SubproblemKey { c3: Some(c3), ..key }, true);
                        }
                    }
                }
            }
        }
    }
    table
}
