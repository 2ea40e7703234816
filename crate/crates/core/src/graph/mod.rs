//! Graph data model: CSR graphs, dense tropical matrices, file formats and
//! synthetic generators.

mod csr;
mod dense;
mod distance;
pub mod generate;
pub mod io;

pub use csr::Graph;
pub use dense::{csr_to_dense, dense_to_csr, DistanceMatrix};
pub use distance::{saturating_add, saturating_add3, Distance};
pub use generate::{gen_er, gen_nws};
pub use io::{load_edge_list, read_csr, read_graph_file, write_csr, write_edge_list};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("vertex id {id} out of range for {n} vertices")]
    VertexOutOfRange { id: u64, n: usize },
    #[error("vertex {0} listed twice")]
    DuplicateVertex(u32),
    #[error("arc {u}->{v} has the INF sentinel as weight")]
    InfiniteWeight { u: u32, v: u32 },
    #[error("invalid CSR: {0}")]
    InvalidCsr(String),
    #[error("shape mismatch: expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
