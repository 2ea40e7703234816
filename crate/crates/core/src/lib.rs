//! Exact all-pairs shortest paths by recursive graph partitioning, plus an
//! analytic latency/energy model of running that schedule on a
//! phase-change-memory processing-in-memory accelerator.
//!
//! The pieces, bottom-up:
//!
//! - [`graph`]: CSR graphs, dense tropical matrices, file formats, generators.
//! - [`kernels`]: Floyd–Warshall (classic and panel-remapped), min-plus
//!   products, restrict/inject, and the cross-component merge.
//! - [`partition`]: multilevel k-way partitioning, boundary extraction and
//!   the recursion hierarchy of boundary graphs.
//! - [`solver`]: the bottom-up recursive solver, queries, result persistence
//!   and a Dijkstra-based verifier.
//! - [`sim`]: device configuration and the cycle/energy model driven by the
//!   solver's execution trace.
//! - [`experiment`]: the generate/solve/simulate/report commands behind the
//!   `pim-apsp` binary.

pub mod experiment;
pub mod graph;
pub mod kernels;
pub mod partition;
pub mod sim;
pub mod solver;

mod parallel;

pub use graph::{Distance, DistanceMatrix, Graph};

/// Version string embedded in every manifest and report.
pub const TOOL_VERSION: &str = concat!("pim-apsp ", env!("CARGO_PKG_VERSION"));
