//! The recursive solver: closes every level of a [`PartitionHierarchy`]
//! bottom-up, then answers queries from the level-0 blocks plus the
//! boundary closure.
//!
//! [`PartitionHierarchy`]: crate::partition::PartitionHierarchy

mod persist;
mod recursive;
mod trace;
mod verify;

pub use persist::{write_result, Manifest, MANIFEST_SCHEMA_VERSION};
pub use recursive::{solve_apsp, ApspResult, SolverConfig};
pub use trace::{ComponentTrace, ExecutionTrace, LevelTrace, MergeTrace, TopTrace};
pub use verify::{dijkstra, verify_against_oracle, Mismatch, VerifyReport};

use thiserror::Error;

use crate::graph::GraphError;
use crate::kernels::KernelError;
use crate::partition::PartitionError;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("manifest encoding: {0}")]
    Json(#[from] serde_json::Error),
}
