//! Seeded instance generators.
//!
//! All randomness comes from ChaCha8 seeded with the spec's 64-bit seed;
//! each generator step uses its own stream so that changing one knob does
//! not reshuffle the others.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::caterpillar::Caterpillar;
use crate::color::{ColorSet, ListAssignment};
use crate::graph::BipartiteGraph;
use crate::io::Instance;

pub const RNG_NAME: &str = "ChaCha8";

const STREAM_CATERPILLAR: u64 = 0;
const STREAM_EDGES: u64 = 1;
const STREAM_LISTS: u64 = 2;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GenError {
    #[error("backbone length must be at least 1")]
    EmptyBackbone,
    #[error("leaf rate must be finite and non-negative, got {0}")]
    LeafRate(f64),
    #[error("edge probability must lie in [0, 1], got {0}")]
    EdgeProbability(f64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ListMode {
    Full,
    RandomNonempty,
    RandomAllowEmpty,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GenSpec {
    pub backbone_len: usize,
    pub leaf_rate: f64,
    pub y_count: usize,
    /// `None` leaves the instance without lists.
    pub list_mode: Option<ListMode>,
    /// Exactly one leaf per backbone vertex.
    pub comb_mode: bool,
    pub seed: u64,
}

impl GenSpec {
    /// The `"meta"` object written next to generated instances.
    pub fn meta(&self) -> Value {
        json!({ "generator": "caterpillar-convex", "rng": RNG_NAME, "spec": self })
    }
}

fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// Backbone `x1..xn`, then leaves numbered on in backbone order.
pub fn gen_caterpillar(spec: &GenSpec) -> Result<Caterpillar, GenError> {
    if spec.backbone_len == 0 {
        return Err(GenError::EmptyBackbone);
    }
    if !spec.leaf_rate.is_finite() || spec.leaf_rate < 0.0 {
        return Err(GenError::LeafRate(spec.leaf_rate));
    }
    let mut r = rng(spec.seed, STREAM_CATERPILLAR);
    let poisson = (spec.leaf_rate > 0.0).then(|| Poisson::new(spec.leaf_rate).expect("rate checked above"));
    let mut t = Caterpillar::path((1..=spec.backbone_len).map(|i| format!("x{i}")));
    let mut next = spec.backbone_len + 1;
    for k in 0..spec.backbone_len {
        let count = match (&poisson, spec.comb_mode) {
            (_, true) => 1,
            (Some(p), false) => p.sample(&mut r) as usize,
            (None, false) => 0,
        };
        for _ in 0..count {
            t.leaves[k].push(format!("x{next}"));
            next += 1;
        }
    }
    Ok(t)
}

/// A graph whose Y-neighborhoods are random subtrees of `t`.
///
/// Each subtree is a uniformly chosen backbone subpath plus each of its
/// leaves with probability 1/2; with probability 1/10 it then collapses to
/// one uniformly chosen vertex of itself.
pub fn gen_convex_instance(t: &Caterpillar, y_count: usize, seed: u64) -> BipartiteGraph {
    assert!(!t.is_empty(), "caterpillar must have a backbone");
    let mut r = rng(seed, STREAM_EDGES);
    let n = t.len();
    let x_ids: Vec<String> = t.backbone.iter().chain(t.leaves.iter().flatten()).cloned().collect();
    let mut leaf_index = Vec::with_capacity(n);
    let mut next = n;
    for ls in &t.leaves {
        leaf_index.push(next..next + ls.len());
        next += ls.len();
    }
    let y_ids: Vec<String> = (1..=y_count).map(|i| format!("y{i}")).collect();
    let pairs = n * (n + 1) / 2;
    let mut edges = Vec::new();
    for y in 0..y_count {
        let (i, j) = nth_pair(n, r.random_range(0..pairs));
        let mut sub: Vec<usize> = (i..=j).collect();
        for range in &leaf_index[i..=j] {
            sub.extend(range.clone().filter(|_| r.random_bool(0.5)));
        }
        if r.random_bool(0.1) {
            sub = vec![sub[r.random_range(0..sub.len())]];
        }
        sub.sort_unstable();
        edges.extend(sub.into_iter().map(|x| (x, y)));
    }
    BipartiteGraph::from_parts(x_ids, y_ids, edges)
}

/// The `p`-th pair `(i, j)` with `i <= j < n`, row by row.
fn nth_pair(n: usize, mut p: usize) -> (usize, usize) {
    for i in 0..n {
        let row = n - i;
        if p < row {
            return (i, i + p);
        }
        p -= row;
    }
    unreachable!("pair index out of range")
}

pub fn gen_lists(g: &BipartiteGraph, mode: ListMode, seed: u64) -> ListAssignment {
    let mut r = rng(seed, STREAM_LISTS);
    let mut draw = || match mode {
        ListMode::Full => ColorSet::FULL,
        ListMode::RandomNonempty => ColorSet::from_bits(r.random_range(1..8)),
        ListMode::RandomAllowEmpty => ColorSet::from_bits(r.random_range(0..8)),
    };
    let x = (0..g.x_count()).map(|_| draw()).collect();
    let y = (0..g.y_count()).map(|_| draw()).collect();
    ListAssignment { x, y }
}

/// Each of the `nx * ny` pairs is an edge independently with probability `edge_prob`.
pub fn gen_arbitrary_bipartite(nx: usize, ny: usize, edge_prob: f64, seed: u64) -> Result<BipartiteGraph, GenError> {
    if !(0.0..=1.0).contains(&edge_prob) {
        return Err(GenError::EdgeProbability(edge_prob));
    }
    let mut r = rng(seed, STREAM_EDGES);
    let mut edges = Vec::new();
    for x in 0..nx {
        for y in 0..ny {
            if r.random_bool(edge_prob) {
                edges.push((x, y));
            }
        }
    }
    Ok(BipartiteGraph::from_parts(
        (1..=nx).map(|i| format!("x{i}")).collect(),
        (1..=ny).map(|i| format!("y{i}")).collect(),
        edges,
    ))
}

/// A full instance: caterpillar, convex graph and optional lists.
pub fn generate(spec: &GenSpec) -> Result<Instance, GenError> {
    let t = gen_caterpillar(spec)?;
    let graph = gen_convex_instance(&t, spec.y_count, spec.seed);
    let lists = spec.list_mode.map(|mode| gen_lists(&graph, mode, spec.seed));
    Ok(Instance {
        graph,
        lists,
        caterpillar: Some(t),
    })
}
