//! Recognition and list 3-coloring of caterpillar-convex bipartite graphs.
//!
//! A bipartite graph G = (X ∪ Y, E) is caterpillar-convex when some caterpillar
//! T on X makes every neighborhood N(y) a subtree of T. [`recognize`] finds
//! such a T or reports which stage failed, and [`list3color`] solves
//! List-3-Coloring once a representation is known. Brute-force references live
//! in [`oracle`]; seeded instance generators live in [`generator`].

pub mod caterpillar;
pub mod cli;
pub mod color;
pub mod coloring;
pub mod error;
pub mod generator;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod recognition;
pub mod verify;

pub use caterpillar::{Caterpillar, CoverageError, Layout, Place};
pub use color::{Color, ColorSet, Coloring, ListAssignment};
pub use coloring::{list3color, ColorError};
pub use error::InternalError;
pub use graph::{BipartiteGraph, GraphError, Vertex};
pub use io::{parse_instance, serialize_instance, Instance, InstanceError};
pub use recognition::{recognize, NotConvexReason, Recognition};
pub use verify::{verify_caterpillar_representation, verify_coloring, ColoringWitness, Verdict, VerifyError};
