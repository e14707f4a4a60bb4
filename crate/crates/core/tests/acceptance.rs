//! The acceptance criteria, one pass/fail line each.
//!
//! Each criterion runs in isolation; a panic inside one counts as a failure
//! of that criterion only. The test fails if any criterion fails.

use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::time::{Duration, Instant};

use catconvex::coloring::{solve_subproblem, subproblem_graph, verify_subproblem_coloring, SubproblemKey};
use catconvex::generator::{gen_arbitrary_bipartite, generate, GenSpec, ListMode};
use catconvex::io::parse_instance;
use catconvex::oracle::{brute_force_list_color, brute_force_recognize, brute_force_subproblem, SizeBudget};
use catconvex::recognition::{build_containment_dag, reduce};
use catconvex::{
    list3color, recognize, verify_caterpillar_representation, verify_coloring, BipartiteGraph, Instance,
    NotConvexReason, Recognition, Verdict,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn fixture(name: &str) -> Instance {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    parse_instance(&std::fs::read_to_string(p).unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(elapsed: Duration, limit: Duration, what: &str) -> Result<(), String> {
    ensure(elapsed < limit, || format!("{what} took {elapsed:?}, limit {limit:?}"))
}

const UNBOUNDED: SizeBudget = SizeBudget {
    max_x: 8,
    max_y: 64,
    max_assignments: u128::MAX,
};

fn graph_from_mask(nx: usize, ny: usize, mask: u32) -> BipartiteGraph {
    let x: Vec<String> = (1..=nx).map(|i| format!("x{i}")).collect();
    let y: Vec<String> = (1..=ny).map(|i| format!("y{i}")).collect();
    let edges: Vec<(&str, &str)> = (0..nx * ny)
        .filter(|b| mask >> b & 1 == 1)
        .map(|b| (x[b / ny].as_str(), y[b % ny].as_str()))
        .collect();
    BipartiteGraph::new(x.iter().map(String::as_str), y.iter().map(String::as_str), edges).unwrap()
}

fn golden_positives() -> Outcome {
    for name in ["fig1_g1.json", "fig1_g2.json"] {
        let g = fixture(name).graph;
        let start = Instant::now();
        let r = recognize(&g).map_err(|e| e.to_string())?;
        let t = r.caterpillar().ok_or_else(|| format!("{name} rejected: {r:?}"))?;
        ensure(verify_caterpillar_representation(&g, t) == Ok(Verdict::Accept), || {
            format!("{name}: representation rejected")
        })?;
        within(start.elapsed(), Duration::from_secs(1), name)?;
    }
    Ok("both figure graphs accepted with verified representations".into())
}

fn golden_negative() -> Outcome {
    let g = fixture("spider7.json").graph;
    let start = Instant::now();
    let r = recognize(&g).map_err(|e| e.to_string())?;
    ensure(r == Recognition::NotConvex(NotConvexReason::C1pFailed), || {
        format!("got {r:?}")
    })?;
    let oracle = brute_force_recognize(&g, SizeBudget::default()).map_err(|e| e.to_string())?;
    ensure(oracle.is_none(), || format!("oracle found {oracle:?}"))?;
    within(start.elapsed(), Duration::from_secs(10), "spider7")?;
    Ok(format!("c1p-failed, oracle agrees, {:?}", start.elapsed()))
}

fn recognition_agrees(g: &BipartiteGraph) -> Result<(), String> {
    let ours = recognize(g).map_err(|e| e.to_string())?;
    let oracle = brute_force_recognize(g, SizeBudget::default()).map_err(|e| e.to_string())?;
    ensure(ours.is_convex() == oracle.is_some(), || {
        format!("verdicts differ on {g:?}")
    })?;
    if let Some(t) = ours.caterpillar() {
        ensure(verify_caterpillar_representation(g, t) == Ok(Verdict::Accept), || {
            format!("bad representation for {g:?}")
        })?;
    }
    Ok(())
}

fn recognition_equivalence() -> Outcome {
    let start = Instant::now();
    let mut exhaustive = 0;
    for nx in 0..=3 {
        for ny in 0..=3 {
            for mask in 0..1u32 << (nx * ny) {
                recognition_agrees(&graph_from_mask(nx, ny, mask))?;
                exhaustive += 1;
            }
        }
    }
    let random = 600;
    for seed in 0..random {
        let (nx, ny) = (1 + (seed % 6) as usize, 1 + (seed / 6 % 6) as usize);
        let p = [0.25, 0.4, 0.55, 0.7][(seed / 36 % 4) as usize];
        recognition_agrees(&gen_arbitrary_bipartite(nx, ny, p, seed).unwrap())?;
    }
    within(start.elapsed(), Duration::from_secs(300), "recognition sweep")?;
    Ok(format!("{exhaustive} exhaustive + {random} random graphs agree"))
}

fn coloring_equivalence() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut feasible) = (0, 0);
    for seed in 0..5000u64 {
        let mode = if seed % 2 == 0 {
            ListMode::RandomNonempty
        } else {
            ListMode::RandomAllowEmpty
        };
        let spec = GenSpec {
            backbone_len: 1 + (seed % 5) as usize,
            leaf_rate: 0.9,
            y_count: 1 + (seed % 7) as usize,
            list_mode: Some(mode),
            comb_mode: seed % 9 == 0,
            seed,
        };
        let inst = generate(&spec).unwrap();
        let (g, l) = (&inst.graph, inst.lists.as_ref().unwrap());
        if g.x_count() > 7 || g.y_count() > 7 {
            continue;
        }
        let ours = list3color(g, l, None).map_err(|e| format!("seed {seed}: {e}"))?;
        let oracle = brute_force_list_color(g, l, UNBOUNDED).map_err(|e| e.to_string())?;
        ensure(ours.is_some() == oracle.is_some(), || {
            format!("seed {seed}: verdicts differ")
        })?;
        if let Some(c) = &ours {
            ensure(verify_coloring(g, l, c) == Ok(Verdict::Accept), || {
                format!("seed {seed}: coloring rejected")
            })?;
            feasible += 1;
        }
        checked += 1;
    }
    ensure(checked >= 500, || format!("only {checked} instances"))?;
    within(start.elapsed(), Duration::from_secs(300), "coloring sweep")?;
    Ok(format!("{checked} instances agree ({feasible} feasible, all verified)"))
}

fn subproblem_completeness() -> Outcome {
    let start = Instant::now();
    let (mut checked, mut valid) = (0, 0);
    for seed in 0..3000u64 {
        let spec = GenSpec {
            backbone_len: 1 + (seed % 5) as usize,
            leaf_rate: 0.8,
            y_count: 1 + (seed % 6) as usize,
            list_mode: Some(if seed % 3 == 0 {
                ListMode::Full
            } else {
                ListMode::RandomNonempty
            }),
            comb_mode: false,
            seed,
        };
        let inst = generate(&spec).unwrap();
        let (g, l, t) = (
            &inst.graph,
            inst.lists.as_ref().unwrap(),
            inst.caterpillar.as_ref().unwrap(),
        );
        // One key per instance, rotating through the enumeration.
        let keys: Vec<SubproblemKey> = SubproblemKey::all(t.len()).collect();
        let key = keys[(seed as usize * 7) % keys.len()];
        let gs = subproblem_graph(g, t, &key).map_err(|e| e.to_string())?;
        if gs.x_count() + gs.y_count() > 12 {
            continue;
        }
        let ours = solve_subproblem(g, t, l, &key).map_err(|e| e.to_string())?;
        let oracle = brute_force_subproblem(g, t, l, &key, UNBOUNDED).map_err(|e| e.to_string())?;
        ensure(ours.is_valid() == oracle.is_some(), || {
            format!("seed {seed} {key}: verdicts differ")
        })?;
        if let Some(pc) = &ours.coloring {
            ensure(verify_subproblem_coloring(g, t, l, &key, pc) == Ok(true), || {
                format!("seed {seed} {key}: bad coloring")
            })?;
            valid += 1;
        }
        checked += 1;
    }
    ensure(checked >= 1000, || format!("only {checked} subproblems"))?;
    within(start.elapsed(), Duration::from_secs(300), "subproblem sweep")?;
    Ok(format!("{checked} subproblems agree ({valid} valid, all verified)"))
}

fn reduction_soundness() -> Outcome {
    let mut checked = 0;
    for seed in 0..400u64 {
        let (nx, ny) = (1 + (seed % 6) as usize, 1 + (seed / 6 % 6) as usize);
        let g = gen_arbitrary_bipartite(nx, ny, 0.45, seed).unwrap();
        let r = reduce(&g);
        let v = |h: &BipartiteGraph| brute_force_recognize(h, SizeBudget::default()).map(|t| t.is_some());
        let (a, b, c) = (v(&g), v(&r.g1), v(&r.g2));
        ensure(a == b && a == c, || format!("seed {seed}: G {a:?}, G1 {b:?}, G2 {c:?}"))?;
        checked += 1;
    }
    Ok(format!("{checked} graphs, verdicts on G, G1 and G2 identical"))
}

fn twin_free(g: &BipartiteGraph) -> bool {
    let mut seen: Vec<&[usize]> = (0..g.x_count()).map(|x| g.x_neighbors(x)).collect();
    seen.sort();
    seen.windows(2).all(|w| w[0] != w[1])
}

fn structural_invariants() -> Outcome {
    let mut checked = 0;
    let mut seed = 0u64;
    while checked < 10_000 {
        seed += 1;
        let (nx, ny) = (2 + (seed % 11) as usize, 1 + (seed / 11 % 12) as usize);
        let p = [0.2, 0.35, 0.5, 0.65][(seed % 4) as usize];
        let g = gen_arbitrary_bipartite(nx, ny, p, seed).unwrap();
        if !twin_free(&g) {
            continue;
        }
        let d = build_containment_dag(&g).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(d.is_acyclic(), || format!("seed {seed}: cycle"))?;
        ensure(d.is_transitive(), || format!("seed {seed}: not transitive"))?;
        checked += 1;
    }
    Ok(format!("{checked} twin-free graphs, all DAGs acyclic and transitive"))
}

/// Least-squares slope of log(time) against log(n).
fn slope(points: &[(f64, f64)]) -> f64 {
    let k = points.len() as f64;
    let (sx, sy) = points
        .iter()
        .fold((0.0, 0.0), |(a, b), &(x, y)| (a + x.ln(), b + y.ln()));
    let (mx, my) = (sx / k, sy / k);
    let num: f64 = points.iter().map(|&(x, y)| (x.ln() - mx) * (y.ln() - my)).sum();
    let den: f64 = points.iter().map(|&(x, _)| (x.ln() - mx).powi(2)).sum();
    num / den
}

fn scaling_trend() -> Outcome {
    let mut rec = Vec::new();
    let mut col = Vec::new();
    for n in [50usize, 100, 200, 400] {
        let spec = GenSpec {
            backbone_len: n,
            leaf_rate: 1.0,
            y_count: n,
            list_mode: Some(ListMode::Full),
            comb_mode: false,
            seed: n as u64,
        };
        let inst = generate(&spec).unwrap();
        let (g, l) = (&inst.graph, inst.lists.as_ref().unwrap());
        // Best of three runs damps scheduler noise on the small sizes.
        let (mut best_rec, mut best_col) = (Duration::MAX, Duration::MAX);
        for _ in 0..3 {
            let start = Instant::now();
            let r = recognize(g).map_err(|e| e.to_string())?;
            let t_rec = start.elapsed();
            ensure(r.is_convex(), || format!("n = {n}: generated instance rejected"))?;
            let start = Instant::now();
            let c = list3color(g, l, None).map_err(|e| e.to_string())?;
            let t_col = start.elapsed();
            ensure(c.is_some(), || format!("n = {n}: full lists reported infeasible"))?;
            within(t_rec, Duration::from_secs(60), "recognize")?;
            within(t_col, Duration::from_secs(60), "list3color")?;
            best_rec = best_rec.min(t_rec);
            best_col = best_col.min(t_col);
        }
        rec.push((n as f64, best_rec.as_secs_f64()));
        col.push((n as f64, best_col.as_secs_f64()));
    }
    let (sr, sc) = (slope(&rec), slope(&col));
    ensure(sr <= 3.5 && sc <= 3.5, || {
        format!("slopes recognize {sr:.2}, list3color {sc:.2}")
    })?;
    let at = |v: &[(f64, f64)]| {
        v.iter()
            .map(|(n, t)| format!("{n}:{:.1}ms", t * 1e3))
            .collect::<Vec<_>>()
            .join(" ")
    };
    Ok(format!(
        "slopes recognize {sr:.2} [{}], list3color {sc:.2} [{}]",
        at(&rec),
        at(&col)
    ))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 8] = [
        ("golden positives", golden_positives),
        ("golden negative", golden_negative),
        ("recognition oracle equivalence", recognition_equivalence),
        ("coloring oracle equivalence", coloring_equivalence),
        ("subproblem completeness", subproblem_completeness),
        ("reduction soundness", reduction_soundness),
        ("structural invariants", structural_invariants),
        ("scaling trend", scaling_trend),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(run))
            .unwrap_or_else(|p| Err(p.downcast_ref::<String>().cloned().unwrap_or_else(|| "panicked".into())));
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail}", k + 1),
            Err(why) => {
                println!("criterion {} FAIL {name}: {why}", k + 1);
                failed.push(k + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
