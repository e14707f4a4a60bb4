//! Exhaustive references for both problems.
//!
//! Nothing here is clever: every search runs over the full space in a fixed
//! order, and a budget turns oversized inputs into an error instead of a
//! silent skip.

use itertools::Itertools;
use thiserror::Error;

use crate::caterpillar::{Caterpillar, Layout};
use crate::color::{Color, ColorSet, Coloring, ListAssignment};
use crate::coloring::{subproblem_graph, PartialColoring, SubproblemError, SubproblemKey};
use crate::graph::BipartiteGraph;
use crate::verify::first_violation;

/// Upper limits for exhaustive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SizeBudget {
    pub max_x: usize,
    pub max_y: usize,
    pub max_assignments: u128,
}

impl Default for SizeBudget {
    fn default() -> Self {
        SizeBudget {
            max_x: 8,
            max_y: 64,
            max_assignments: 3u128.pow(15),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("budget exceeded: {what} is {value}, limit {limit}")]
    BudgetExceeded {
        what: &'static str,
        value: u128,
        limit: u128,
    },
    #[error("lists do not match the graph")]
    ListShape,
    #[error(transparent)]
    Subproblem(#[from] SubproblemError),
}

fn check(what: &'static str, value: u128, limit: u128) -> Result<(), OracleError> {
    if value > limit {
        return Err(OracleError::BudgetExceeded { what, value, limit });
    }
    Ok(())
}

/// First proper list coloring in lexicographic order over (X, then Y) in
/// declaration order, or `None` when there is none.
pub fn brute_force_list_color(
    g: &BipartiteGraph,
    l: &ListAssignment,
    budget: SizeBudget,
) -> Result<Option<Coloring>, OracleError> {
    if !l.matches(g) {
        return Err(OracleError::ListShape);
    }
    check("list product", l.product_size(), budget.max_assignments)?;
    let choices: Vec<Vec<Color>> = l.x.iter().chain(&l.y).map(|s| s.iter().collect()).collect();
    if choices.iter().any(Vec::is_empty) {
        return Ok(None);
    }
    let nx = g.x_count();
    let mut digit = vec![0usize; choices.len()];
    loop {
        let color = |v: usize| choices[v][digit[v]];
        if g.edges().iter().all(|&(x, y)| color(x) != color(nx + y)) {
            return Ok(Some(Coloring {
                x: (0..nx).map(color).collect(),
                y: (nx..choices.len()).map(color).collect(),
            }));
        }
        // Odometer: the last vertex turns fastest.
        let mut k = choices.len();
        loop {
            if k == 0 {
                return Ok(None);
            }
            k -= 1;
            digit[k] += 1;
            if digit[k] < choices[k].len() {
                break;
            }
            digit[k] = 0;
        }
    }
}

/// First proper list coloring of G_S for `key` with the backbone colors of
/// the key fixed, found by [`brute_force_list_color`] on G_S.
pub fn brute_force_subproblem(
    g: &BipartiteGraph,
    t: &Caterpillar,
    l: &ListAssignment,
    key: &SubproblemKey,
    budget: SizeBudget,
) -> Result<Option<PartialColoring>, OracleError> {
    if !l.matches(g) {
        return Err(OracleError::ListShape);
    }
    let gs = subproblem_graph(g, t, key)?;
    let mut fixed: Vec<(&str, Color)> = t.segment(key.i, key.j).iter().map(|b| (b.as_str(), key.c2)).collect();
    if let Some(c1) = key.c1 {
        fixed.push((&t.backbone[key.i - 2], c1));
    }
    if let Some(c3) = key.c3 {
        fixed.push((&t.backbone[key.j], c3));
    }
    let global_x = |x: usize| g.x_index(gs.x_id(x)).expect("G_S is induced");
    let global_y = |y: usize| g.y_index(gs.y_id(y)).expect("G_S is induced");
    let mut ls = ListAssignment {
        x: (0..gs.x_count()).map(|x| l.x[global_x(x)]).collect(),
        y: (0..gs.y_count()).map(|y| l.y[global_y(y)]).collect(),
    };
    for (id, c) in fixed {
        let x = gs.x_index(id).expect("boundary vertices are in G_S");
        ls.x[x] = ls.x[x].intersect(ColorSet::single(c));
    }
    let Some(col) = brute_force_list_color(&gs, &ls, budget)? else {
        return Ok(None);
    };
    let mut pc = PartialColoring {
        x: col.x.iter().enumerate().map(|(x, &c)| (global_x(x), c)).collect(),
        y: col.y.iter().enumerate().map(|(y, &c)| (global_y(y), c)).collect(),
    };
    pc.x.sort_unstable();
    pc.y.sort_unstable();
    Ok(Some(pc))
}

/// Index form of every caterpillar on `0..n`: every ordered backbone of
/// every size, times every map from the other vertices to backbone slots.
fn layouts(n: usize) -> impl Iterator<Item = (Vec<usize>, Vec<Vec<usize>>)> {
    (1..=n).flat_map(move |k| {
        (0..n).permutations(k).flat_map(move |backbone| {
            let mut on = vec![false; n];
            for &b in &backbone {
                on[b] = true;
            }
            let rest: Vec<usize> = (0..n).filter(|&x| !on[x]).collect();
            let total = (k as u64).pow(rest.len() as u32);
            (0..total).map(move |mut code| {
                let mut leaves = vec![Vec::new(); k];
                for &x in &rest {
                    leaves[(code % k as u64) as usize].push(x);
                    code /= k as u64;
                }
                (backbone.clone(), leaves)
            })
        })
    })
}

/// Every caterpillar on exactly `ids`, lazily. Reversed backbones and other
/// duplicates are not filtered out.
pub fn enumerate_caterpillars(ids: &[String]) -> Result<impl Iterator<Item = Caterpillar> + '_, OracleError> {
    check("vertex count", ids.len() as u128, SizeBudget::default().max_x as u128)?;
    Ok(layouts(ids.len()).map(move |(backbone, leaves)| Caterpillar {
        backbone: backbone.iter().map(|&b| ids[b].clone()).collect(),
        leaves: leaves
            .iter()
            .map(|ls| ls.iter().map(|&x| ids[x].clone()).collect())
            .collect(),
    }))
}

/// First enumerated caterpillar that represents `g`, or `None` if none does.
pub fn brute_force_recognize(g: &BipartiteGraph, budget: SizeBudget) -> Result<Option<Caterpillar>, OracleError> {
    check("|X|", g.x_count() as u128, budget.max_x as u128)?;
    check("|Y|", g.y_count() as u128, budget.max_y as u128)?;
    if g.x_count() == 0 {
        return Ok(Some(Caterpillar::default()));
    }
    Ok(layouts(g.x_count())
        .map(|(backbone, leaves)| Layout::new(g.x_count(), backbone, leaves))
        .find(|layout| first_violation(g, layout).is_none())
        .map(|layout| layout.to_caterpillar(g)))
}

/// Some ordering of `0..k` making every set consecutive, by trying all of them.
pub fn brute_force_consecutive(k: usize, sets: &[Vec<usize>]) -> Option<Vec<usize>> {
    (0..k).permutations(k).find(|order| {
        let mut pos = vec![0; k];
        for (i, &e) in order.iter().enumerate() {
            pos[e] = i;
        }
        sets.iter().filter(|s| !s.is_empty()).all(|s| {
            let (lo, hi) = s.iter().map(|&e| pos[e]).minmax().into_option().expect("non-empty");
            hi - lo + 1 == s.len()
        })
    })
}
