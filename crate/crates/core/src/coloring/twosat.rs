//! 2SAT through strongly connected components, and 2-list coloring on top of it.

use crate::color::{Color, ColorSet};

/// A literal: variable `var` is true, or false when `negated`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Lit {
    pub var: usize,
    pub negated: bool,
}

impl Lit {
    pub fn pos(var: usize) -> Lit {
        Lit { var, negated: false }
    }

    pub fn neg(var: usize) -> Lit {
        Lit { var, negated: true }
    }

    fn node(self) -> usize {
        2 * self.var + usize::from(self.negated)
    }

    fn not(self) -> Lit {
        Lit {
            var: self.var,
            negated: !self.negated,
        }
    }
}

/// Clauses of two literals over `n` variables.
#[derive(Debug, Clone)]
pub struct TwoSat {
    n: usize,
    implications: Vec<Vec<usize>>,
}

impl TwoSat {
    pub fn new(n: usize) -> Self {
        TwoSat {
            n,
            implications: vec![Vec::new(); 2 * n],
        }
    }

    /// Adds `a ∨ b`.
    pub fn add_clause(&mut self, a: Lit, b: Lit) {
        self.implications[a.not().node()].push(b.node());
        self.implications[b.not().node()].push(a.node());
    }

    /// A satisfying assignment, or `None`.
    ///
    /// Tarjan numbers components in reverse topological order, so a variable
    /// is set true when its positive literal's component comes first.
    pub fn solve(&self) -> Option<Vec<bool>> {
        let comp = tarjan(&self.implications);
        (0..self.n)
            .map(|v| {
                let (t, f) = (comp[2 * v], comp[2 * v + 1]);
                (t != f).then_some(t < f)
            })
            .collect()
    }
}

/// Iterative Tarjan; returns the component index of every node.
fn tarjan(adj: &[Vec<usize>]) -> Vec<usize> {
    const UNSEEN: usize = usize::MAX;
    let n = adj.len();
    let mut index = vec![UNSEEN; n];
    let mut low = vec![0; n];
    let mut comp = vec![UNSEEN; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut call: Vec<(usize, usize)> = Vec::new();
    let (mut next_index, mut next_comp) = (0, 0);
    for root in 0..n {
        if index[root] != UNSEEN {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&(v, edge)) = call.last() {
            if let Some(&w) = adj[v].get(edge) {
                call.last_mut().expect("frame exists").1 += 1;
                if index[w] == UNSEEN {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                loop {
                    let w = stack.pop().expect("component members are on the stack");
                    on_stack[w] = false;
                    comp[w] = next_comp;
                    if w == v {
                        break;
                    }
                }
                next_comp += 1;
            }
        }
    }
    comp
}

/// Colors vertices with two-color lists so that no edge is monochromatic.
///
/// Each vertex gets one variable, true meaning it takes the smaller color of
/// its list. Every edge forbids each shared color on both ends at once.
pub fn two_list_color(lists: &[ColorSet], edges: &[(usize, usize)]) -> Option<Vec<Color>> {
    assert!(
        lists.iter().all(|s| s.len() == 2),
        "every list must have exactly two colors"
    );
    let takes = |v: usize, c: Color| {
        if lists[v].min() == Some(c) {
            Lit::pos(v)
        } else {
            Lit::neg(v)
        }
    };
    let mut sat = TwoSat::new(lists.len());
    for &(u, v) in edges {
        for c in lists[u].intersect(lists[v]).iter() {
            sat.add_clause(takes(u, c).not(), takes(v, c).not());
        }
    }
    let assignment = sat.solve()?;
    Some(
        assignment
            .iter()
            .enumerate()
            .map(|(v, &first)| if first { lists[v].min() } else { lists[v].max() }.expect("two colors"))
            .collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(cs: &[u8]) -> ColorSet {
        cs.iter().map(|&c| Color::new(c).unwrap()).collect()
    }

    #[test]
    fn one_edge() {
        let c = two_list_color(&[set(&[1, 2]), set(&[1, 2])], &[(0, 1)]).unwrap();
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn odd_cycle_is_unsatisfiable() {
        let l = vec![set(&[1, 2]); 3];
        assert_eq!(two_list_color(&l, &[(0, 1), (1, 2), (2, 0)]), None);
    }

    #[test]
    fn disjoint_lists_are_unconstrained() {
        let c = two_list_color(&[set(&[1, 2]), set(&[3, 2])], &[(0, 1)]).unwrap();
        assert_ne!(c[0], c[1]);
    }

    #[test]
    fn contradiction_detected() {
        let mut s = TwoSat::new(1);
        s.add_clause(Lit::pos(0), Lit::pos(0));
        s.add_clause(Lit::neg(0), Lit::neg(0));
        assert_eq!(s.solve(), None);
        let mut s = TwoSat::new(2);
        s.add_clause(Lit::pos(0), Lit::pos(1));
        s.add_clause(Lit::neg(0), Lit::neg(0));
        assert_eq!(s.solve(), Some(vec![false, true]));
    }
}
