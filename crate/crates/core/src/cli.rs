//! The `catconvex` command line.
//!
//! Every command prints at most one JSON document on stdout and diagnostics
//! on stderr. Exit codes: 0 positive answer, 1 negative answer, 2 input or
//! usage error, 3 internal invariant violation (panics included).

use std::ffi::OsString;
use std::fs;
use std::panic::{self, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::caterpillar::Caterpillar;
use crate::color::{Coloring, ListAssignment};
use crate::coloring::{list3color, ColorError};
use crate::generator::{self, GenSpec, ListMode, RNG_NAME};
use crate::graph::BipartiteGraph;
use crate::io::{self, Instance};
use crate::oracle::{self, OracleError, SizeBudget};
use crate::recognition::{recognize, Recognition};
use crate::verify::{verify_caterpillar_representation, verify_coloring, ColoringWitness, Verdict};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Positive = 0,
    Negative = 1,
    InputError = 2,
    Internal = 3,
}

impl ExitStatus {
    pub fn code(self) -> i32 {
        self as i32
    }
}

/// What one invocation produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub status: ExitStatus,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Parser, Debug)]
#[command(
    name = "catconvex",
    version,
    about = "Recognition and list 3-coloring of caterpillar-convex bipartite graphs"
)]
struct Cli {
    /// Print nothing on stdout; only the exit code matters.
    #[arg(long, short, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide caterpillar-convexity and print a representation.
    Recognize { path: PathBuf },
    /// Find a proper list 3-coloring.
    Color {
        path: PathBuf,
        /// Require the caterpillar embedded in the instance instead of
        /// recognizing one when it is absent.
        #[arg(long)]
        use_embedded: bool,
    },
    /// Check a candidate representation or coloring.
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Generate a seeded instance.
    Gen(GenArgs),
    /// Run an exhaustive reference solver.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Subcommand, Debug)]
enum VerifyCommand {
    /// Is the candidate caterpillar a representation of the instance graph?
    Rep { path: PathBuf, candidate: PathBuf },
    /// Is the candidate a proper list coloring? Missing lists count as {1,2,3}.
    Coloring { path: PathBuf, candidate: PathBuf },
}

#[derive(Subcommand, Debug)]
enum OracleCommand {
    Color {
        path: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    Recognize {
        path: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
struct BudgetArgs {
    #[arg(long, default_value_t = SizeBudget::default().max_x)]
    max_x: usize,
    #[arg(long, default_value_t = SizeBudget::default().max_y)]
    max_y: usize,
    #[arg(long, default_value_t = SizeBudget::default().max_assignments)]
    max_assignments: u128,
}

impl From<&BudgetArgs> for SizeBudget {
    fn from(b: &BudgetArgs) -> Self {
        SizeBudget {
            max_x: b.max_x,
            max_y: b.max_y,
            max_assignments: b.max_assignments,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ListsArg {
    Full,
    RandomNonempty,
    RandomAllowEmpty,
}

impl From<ListsArg> for ListMode {
    fn from(a: ListsArg) -> Self {
        match a {
            ListsArg::Full => ListMode::Full,
            ListsArg::RandomNonempty => ListMode::RandomNonempty,
            ListsArg::RandomAllowEmpty => ListMode::RandomAllowEmpty,
        }
    }
}

#[derive(Args, Debug)]
struct GenArgs {
    /// Backbone length of the generating caterpillar.
    #[arg(long, required_unless_present = "arbitrary")]
    backbone: Option<usize>,
    /// Mean number of leaves per backbone vertex.
    #[arg(long, default_value_t = 1.0, conflicts_with = "arbitrary")]
    leaf_rate: f64,
    /// Number of Y-vertices.
    #[arg(long = "y", default_value_t = 0, conflicts_with = "arbitrary")]
    y_count: usize,
    /// Exactly one leaf per backbone vertex.
    #[arg(long, conflicts_with = "arbitrary")]
    comb: bool,
    #[arg(long, value_enum)]
    lists: Option<ListsArg>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Independent edges instead of a convex instance.
    #[arg(long, requires_all = ["nx", "ny", "edge_prob"], conflicts_with = "backbone")]
    arbitrary: bool,
    #[arg(long, requires = "arbitrary")]
    nx: Option<usize>,
    #[arg(long, requires = "arbitrary")]
    ny: Option<usize>,
    #[arg(long, requires = "arbitrary")]
    edge_prob: Option<f64>,
}

/// An answer that is not a positive or negative result.
enum Failure {
    Input(String),
    Internal(String),
}

type CmdResult = Result<(ExitStatus, Value), Failure>;

fn input(e: impl std::fmt::Display) -> Failure {
    Failure::Input(e.to_string())
}

fn load(path: &Path) -> Result<Instance, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    io::parse_instance(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn lists_of(inst: &Instance) -> Result<&ListAssignment, Failure> {
    inst.lists
        .as_ref()
        .ok_or_else(|| Failure::Input("instance has no lists".into()))
}

/// Prints only representations the verifier accepts.
fn convex_output(g: &BipartiteGraph, t: &Caterpillar) -> CmdResult {
    match verify_caterpillar_representation(g, t) {
        Ok(Verdict::Accept) => Ok((
            ExitStatus::Positive,
            json!({ "status": "caterpillar-convex", "caterpillar": io::caterpillar_value(t) }),
        )),
        Ok(Verdict::Reject(y)) => Err(Failure::Internal(format!(
            "emitted caterpillar fails at {:?}",
            g.y_id(y)
        ))),
        Err(e) => Err(Failure::Internal(format!("emitted caterpillar is malformed: {e}"))),
    }
}

/// Prints only colorings the verifier accepts.
fn coloring_output(g: &BipartiteGraph, l: &ListAssignment, c: Option<&Coloring>) -> CmdResult {
    let Some(c) = c else {
        return Ok((ExitStatus::Negative, json!({ "status": "infeasible" })));
    };
    match verify_coloring(g, l, c) {
        Ok(Verdict::Accept) => Ok((
            ExitStatus::Positive,
            json!({ "status": "colored", "colors": io::coloring_value(g, c) }),
        )),
        Ok(Verdict::Reject(w)) => Err(Failure::Internal(format!(
            "emitted coloring fails at {}",
            witness_value(g, &w)
        ))),
        Err(e) => Err(Failure::Internal(format!("emitted coloring is malformed: {e}"))),
    }
}

fn witness_value(g: &BipartiteGraph, w: &ColoringWitness) -> Value {
    match *w {
        ColoringWitness::Vertex(v) => json!({ "vertex": g.id(v) }),
        ColoringWitness::Edge(x, y) => json!({ "edge": [g.x_id(x), g.y_id(y)] }),
    }
}

fn cmd_recognize(path: &Path) -> CmdResult {
    let inst = load(path)?;
    match recognize(&inst.graph).map_err(|e| Failure::Internal(e.to_string()))? {
        Recognition::Convex(t) => convex_output(&inst.graph, &t),
        Recognition::NotConvex(reason) => Ok((
            ExitStatus::Negative,
            json!({ "status": "not-caterpillar-convex", "reason": reason.as_str() }),
        )),
    }
}

fn cmd_color(path: &Path, use_embedded: bool) -> CmdResult {
    let inst = load(path)?;
    let l = lists_of(&inst)?;
    if use_embedded && inst.caterpillar.is_none() {
        return Err(Failure::Input("instance has no embedded caterpillar".into()));
    }
    let c = list3color(&inst.graph, l, inst.caterpillar.as_ref()).map_err(|e| match e {
        ColorError::Internal(e) => Failure::Internal(e.to_string()),
        other => input(other),
    })?;
    coloring_output(&inst.graph, l, c.as_ref())
}

fn verdict_output<W>(v: Verdict<W>, witness: impl FnOnce(W) -> Value) -> CmdResult {
    Ok(match v {
        Verdict::Accept => (ExitStatus::Positive, json!({ "status": "accepted" })),
        Verdict::Reject(w) => (
            ExitStatus::Negative,
            json!({ "status": "rejected", "witness": witness(w) }),
        ),
    })
}

fn cmd_verify(cmd: &VerifyCommand) -> CmdResult {
    match cmd {
        VerifyCommand::Rep { path, candidate } => {
            let inst = load(path)?;
            let t = io::parse_caterpillar_fragment(&read(candidate)?).map_err(input)?;
            let g = &inst.graph;
            let v = verify_caterpillar_representation(g, &t).map_err(input)?;
            verdict_output(v, |y| json!({ "y": g.y_id(y) }))
        }
        VerifyCommand::Coloring { path, candidate } => {
            let inst = load(path)?;
            let g = &inst.graph;
            let c = io::parse_coloring_fragment(g, &read(candidate)?).map_err(input)?;
            let full = ListAssignment::full(g);
            let l = inst.lists.as_ref().unwrap_or(&full);
            let v = verify_coloring(g, l, &c).map_err(input)?;
            verdict_output(v, |w| witness_value(g, &w))
        }
    }
}

fn cmd_gen(a: &GenArgs) -> Result<String, Failure> {
    let lists = a.lists.map(ListMode::from);
    if a.arbitrary {
        let (nx, ny, p) = (
            a.nx.expect("required"),
            a.ny.expect("required"),
            a.edge_prob.expect("required"),
        );
        let graph = generator::gen_arbitrary_bipartite(nx, ny, p, a.seed).map_err(input)?;
        let lists = lists.map(|m| generator::gen_lists(&graph, m, a.seed));
        let meta = json!({
            "generator": "arbitrary-bipartite",
            "rng": RNG_NAME,
            "spec": { "nx": nx, "ny": ny, "edge_prob": p, "list_mode": a.lists.map(ListMode::from), "seed": a.seed },
        });
        return Ok(io::serialize_instance_with_meta(
            &Instance {
                graph,
                lists,
                caterpillar: None,
            },
            meta,
        ));
    }
    let spec = GenSpec {
        backbone_len: a.backbone.expect("required without --arbitrary"),
        leaf_rate: a.leaf_rate,
        y_count: a.y_count,
        list_mode: lists,
        comb_mode: a.comb,
        seed: a.seed,
    };
    let inst = generator::generate(&spec).map_err(input)?;
    Ok(io::serialize_instance_with_meta(&inst, spec.meta()))
}

fn oracle_failure(e: OracleError) -> Failure {
    input(e)
}

fn cmd_oracle(cmd: &OracleCommand) -> CmdResult {
    match cmd {
        OracleCommand::Color { path, budget } => {
            let inst = load(path)?;
            let l = lists_of(&inst)?;
            let c = oracle::brute_force_list_color(&inst.graph, l, budget.into()).map_err(oracle_failure)?;
            coloring_output(&inst.graph, l, c.as_ref())
        }
        OracleCommand::Recognize { path, budget } => {
            let inst = load(path)?;
            match oracle::brute_force_recognize(&inst.graph, budget.into()).map_err(oracle_failure)? {
                Some(t) => convex_output(&inst.graph, &t),
                None => Ok((ExitStatus::Negative, json!({ "status": "not-caterpillar-convex" }))),
            }
        }
    }
}

fn dispatch(cli: &Cli) -> Result<(ExitStatus, String), Failure> {
    let doc = |r: CmdResult| r.map(|(s, v)| (s, serde_json::to_string_pretty(&v).expect("JSON values serialize")));
    match &cli.command {
        Command::Recognize { path } => doc(cmd_recognize(path)),
        Command::Color { path, use_embedded } => doc(cmd_color(path, *use_embedded)),
        Command::Verify(v) => doc(cmd_verify(v)),
        Command::Gen(a) => cmd_gen(a).map(|s| (ExitStatus::Positive, s)),
        Command::Oracle(o) => doc(cmd_oracle(o)),
    }
}

/// Runs one invocation without touching the process streams.
pub fn execute<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let status = if e.use_stderr() {
                ExitStatus::InputError
            } else {
                ExitStatus::Positive
            };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    status,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    status,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let result = panic::catch_unwind(AssertUnwindSafe(|| dispatch(&cli)));
    let (status, stdout, stderr) = match result {
        Ok(Ok((status, mut out))) => {
            out.push('\n');
            (status, out, String::new())
        }
        Ok(Err(Failure::Input(msg))) => (ExitStatus::InputError, String::new(), format!("error: {msg}\n")),
        Ok(Err(Failure::Internal(msg))) => (ExitStatus::Internal, String::new(), format!("internal error: {msg}\n")),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| payload.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            (ExitStatus::Internal, String::new(), format!("internal error: {msg}\n"))
        }
    };
    Output {
        status,
        stdout: if cli.quiet { String::new() } else { stdout },
        stderr,
    }
}
