//! Exact k-cluster (densest k-subgraph) solvers for interval and proper
//! interval graphs.
//!
//! Every graph is handled through its *normal interval representation*:
//! node `i` (1-based) is the half-open interval `[i-1, i + reach(i))`, so the
//! whole graph is encoded by one reach value per node and the lower-triangular
//! adjacency matrix is implied rather than stored.
//!
//! The crate is `no_std` (it needs `alloc`). Parsing files, timing and the
//! command line live in the companion `kcluster` crate.
//!
//! Module map:
//!
//! - [`interval_model`]: realizations, conversion to normal form, the implied
//!   matrix and the edge-count objective.
//! - [`cliques`]: ordered maximal cliques and, for proper graphs, picks and
//!   stairs.
//! - [`proper`] and [`interval`]: the two dynamic programs.
//! - [`dp`]: the table engine and witness reconstruction shared by both.
//! - [`oracle`]: brute-force references.
//! - [`gen`]: seeded and exhaustive instance generators.
#![no_std]

extern crate alloc;

pub mod cliques;
pub mod dp;
pub mod gen;
pub mod interval;
pub mod interval_model;
pub mod oracle;
pub mod proper;

mod witness;

pub use cliques::{maximal_cliques, stairs, CliqueSequence, StairSet};
pub use dp::{ClusterSolution, DpTable, ReconstructError, SolveError, SolveStats, Value};
pub use gen::{enumerate_canonical, gen_random, gen_random_reach, GenError, GenSpec, GraphClass};
pub use interval::{solve_interval, split_bounds_interval, IntervalSolver, SplitBoundsInterval};
pub use interval_model::{
    edge_count, nir_entry, to_nir, to_snir, Coord, Interval, IntervalRealization, ModelError,
    NirForm, Relabeling, SnirForm,
};
pub use oracle::{brute_force_cliques, brute_force_kcluster, connectivity_check, Budget, OracleError};
pub use proper::{solve_proper, split_bounds_proper, ProperSolver, SplitBoundsProper};

/// `C(x, 2)`, the edge count of a clique on `x` nodes.
#[inline]
pub fn pairs(x: usize) -> u64 {
    let x = x as u64;
    x * x.saturating_sub(1) / 2
}
