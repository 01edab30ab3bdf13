//! Path convexities on graphs.
//!
//! A convexity is fixed by which paths count: a path between `i` and `j`
//! qualifies when its length lies in `[a_ij, b_ij]` and all of its chords
//! have length in `[c_ij, d_ij]`. The bounds come from a symbolic tuple
//! (see [`spec::parse_spec`] for the presets) or from four explicit length
//! matrices. From there the crate computes intervals with witness paths,
//! convexity certificates, convex hulls, and the convexity, interval and
//! hull numbers, and ships brute-force oracles to check all of it.

pub mod cli;
pub mod engine;
pub mod error;
pub mod graph;
pub mod hull;
pub mod io;
pub mod oracle;
pub mod solvers;
pub mod spec;
pub mod vset;

pub use engine::{Containment, Engine, IntervalResult, Method, PathWitness, Strategy};
pub use error::{Error, Result};
pub use graph::{build_graph, Chord, Graph, Path};
pub use hull::{ConvexityCertificate, HullTrace};
pub use solvers::{Invariant, SolverConfig, SolverResult};
pub use spec::{parse_spec, resolve_bounds, BoundSymbol, ConvexitySpec, ResolvedBounds};
pub use vset::VertexSet;
