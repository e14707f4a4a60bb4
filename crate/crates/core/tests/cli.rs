use std::path::PathBuf;
use std::process::Command;

use catconvex::io::{parse_caterpillar_fragment, parse_coloring_fragment, parse_instance};
use catconvex::{verify_caterpillar_representation, verify_coloring, Verdict};
use serde_json::Value;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name].iter().collect();
    p.to_string_lossy().into_owned()
}

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

impl Run {
    fn json(&self) -> Value {
        serde_json::from_str(&self.stdout).unwrap_or_else(|e| panic!("bad JSON {e}: {}", self.stdout))
    }

    fn status(&self) -> String {
        self.json()["status"].as_str().unwrap().to_owned()
    }
}

fn run(args: &[&str]) -> Run {
    let out = Command::new(env!("CARGO_BIN_EXE_catconvex"))
        .args(args)
        .output()
        .unwrap();
    Run {
        code: out.status.code().unwrap(),
        stdout: String::from_utf8(out.stdout).unwrap(),
        stderr: String::from_utf8(out.stderr).unwrap(),
    }
}

fn instance(name: &str) -> catconvex::Instance {
    parse_instance(&std::fs::read_to_string(data(name)).unwrap()).unwrap()
}

#[test]
fn recognize_fig1_g1() {
    let r = run(&["recognize", &data("fig1_g1.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(r.status(), "caterpillar-convex");
    let t = parse_caterpillar_fragment(&r.stdout).unwrap();
    assert_eq!(
        verify_caterpillar_representation(&instance("fig1_g1.json").graph, &t),
        Ok(Verdict::Accept)
    );
}

#[test]
fn recognize_spider() {
    let r = run(&["recognize", &data("spider7.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.status(), "not-caterpillar-convex");
    assert_eq!(r.json()["reason"], "c1p-failed");
}

#[test]
fn recognize_malformed() {
    let r = run(&["recognize", &data("malformed.json")]);
    assert_eq!(r.code, 2);
    assert!(r.stdout.is_empty());
    assert!(r.stderr.contains("edges"), "{}", r.stderr);
}

#[test]
fn color_edges() {
    let r = run(&["color", &data("edge_forced.json")]);
    assert_eq!(r.code, 0);
    assert_eq!(r.json()["colors"], serde_json::json!({"x1": 1, "y1": 2}));
    let r = run(&["color", &data("edge_infeasible.json")]);
    assert_eq!(r.code, 1);
    assert_eq!(r.status(), "infeasible");
}

#[test]
fn color_fig1_g2_auto() {
    let r = run(&["color", &data("fig1_g2.json")]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let inst = instance("fig1_g2.json");
    let c = parse_coloring_fragment(&inst.graph, &r.stdout).unwrap();
    assert_eq!(
        verify_coloring(&inst.graph, inst.lists.as_ref().unwrap(), &c),
        Ok(Verdict::Accept)
    );
}

#[test]
fn color_input_errors() {
    // No lists.
    assert_eq!(run(&["color", &data("private_twin.json")]).code, 2);
    // Lists present but not convex.
    assert_eq!(run(&["color", &data("spider7.json")]).code, 2);
    // Embedded caterpillar demanded but absent.
    assert_eq!(run(&["color", "--use-embedded", &data("fig1_g2.json")]).code, 2);
}

#[test]
fn verify_rep() {
    let r = run(&["verify", "rep", &data("fig1_g1.json"), &data("fig1_g1_comb.json")]);
    assert_eq!((r.code, r.status()), (0, "accepted".to_owned()));
    let r = run(&["verify", "rep", &data("fig1_g1.json"), &data("fig1_g1_path.json")]);
    assert_eq!((r.code, r.status()), (1, "rejected".to_owned()));
    let y = r.json()["witness"]["y"].as_str().unwrap().to_owned();
    assert!(y == "y2" || y == "y3", "witness {y}");
    let r = run(&[
        "verify",
        "rep",
        &data("fig1_g2.json"),
        &data("fig1_g2_caterpillar.json"),
    ]);
    assert_eq!(r.code, 0);
    // A caterpillar over the wrong vertex set is a shape mismatch.
    assert_eq!(
        run(&["verify", "rep", &data("fig1_g2.json"), &data("fig1_g1_comb.json")]).code,
        2
    );
}

#[test]
fn verify_coloring_totality() {
    let r = run(&[
        "verify",
        "coloring",
        &data("fig1_g1.json"),
        &data("coloring_missing_vertex.json"),
    ]);
    assert_eq!(r.code, 2);
    // A color output of the tool itself is a valid candidate.
    let colored = run(&["color", &data("fig1_g1.json")]);
    let tmp = std::env::temp_dir().join(format!("catconvex-cli-{}.json", std::process::id()));
    std::fs::write(&tmp, &colored.stdout).unwrap();
    let r = run(&["verify", "coloring", &data("fig1_g1.json"), tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!((r.code, r.status()), (0, "accepted".to_owned()));
}

#[test]
fn gen_contract() {
    let args = [
        "gen",
        "--backbone",
        "3",
        "--comb",
        "--y",
        "4",
        "--lists",
        "full",
        "--seed",
        "7",
    ];
    let (a, b) = (run(&args), run(&args));
    assert_eq!(a.code, 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.json()["meta"]["rng"], "ChaCha8");
    let r = run(&[
        "gen",
        "--arbitrary",
        "--nx",
        "5",
        "--ny",
        "5",
        "--edge-prob",
        "0.3",
        "--seed",
        "1",
    ]);
    assert_eq!(r.code, 0);
    assert!(parse_instance(&r.stdout).is_ok());
    assert_eq!(run(&["gen", "--backbone", "0"]).code, 2);
    assert_eq!(
        run(&["gen", "--arbitrary", "--nx", "5", "--ny", "5", "--edge-prob", "1.5"]).code,
        2
    );
}

#[test]
fn oracle_commands() {
    let r = run(&["oracle", "recognize", &data("spider7.json")]);
    assert_eq!((r.code, r.status()), (1, "not-caterpillar-convex".to_owned()));
    let r = run(&["oracle", "color", &data("edge_forced.json")]);
    assert_eq!((r.code, r.status()), (0, "colored".to_owned()));
    assert_eq!(run(&["oracle", "recognize", &data("x12.json")]).code, 2);
    assert_eq!(
        run(&["oracle", "color", &data("fig1_g2.json"), "--max-assignments", "10"]).code,
        2
    );
}

#[test]
fn main_and_oracle_statuses_agree() {
    for name in [
        "fig1_g1.json",
        "fig1_g2.json",
        "spider7.json",
        "edge_forced.json",
        "edge_infeasible.json",
    ] {
        let a = run(&["recognize", &data(name)]);
        let b = run(&["oracle", "recognize", &data(name)]);
        assert_eq!((a.code, a.status()), (b.code, b.status()), "{name}");
    }
    for name in [
        "fig1_g1.json",
        "fig1_g2.json",
        "edge_forced.json",
        "edge_infeasible.json",
    ] {
        let a = run(&["color", &data(name)]);
        let b = run(&["oracle", "color", &data(name)]);
        assert_eq!((a.code, a.status()), (b.code, b.status()), "{name}");
    }
}

#[test]
fn quiet_leaves_only_the_code() {
    let r = run(&["--quiet", "recognize", &data("spider7.json")]);
    assert_eq!((r.code, r.stdout.as_str()), (1, ""));
}
