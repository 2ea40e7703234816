//! Graph partitioning and the recursion hierarchy of boundary graphs.

mod boundary;
mod hierarchy;
mod kway;

pub use boundary::{
    boundary_mask, build_boundary_graph, components_from_assignment, find_boundary, BoundaryGraph,
    Component,
};
pub use hierarchy::{
    build_hierarchy, FwKernel, KPolicy, Level, PartitionHierarchy, TopSolve, DEFAULT_TILE_LIMIT,
};
pub use kway::{edge_cut, part_cap, partition_kway};

pub(crate) use hierarchy::build_with_closures;

use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};

use thiserror::Error;

use crate::graph::GraphError;

#[derive(Debug, Error)]
pub enum PartitionError {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("inconsistent inputs: {0}")]
    Consistency(String),
    #[error("assignment file line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Reads a METIS-style assignment: one part id per line, line `i` for
/// vertex `i`.
pub fn read_assignment<R: Read>(source: R, n: usize) -> Result<Vec<u32>, PartitionError> {
    let mut out = Vec::with_capacity(n);
    for (idx, line) in BufReader::new(source).lines().enumerate() {
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let part = t.parse::<u32>().map_err(|_| PartitionError::Parse {
            line: idx + 1,
            message: format!("`{t}` is not a part id"),
        })?;
        out.push(part);
    }
    if out.len() != n {
        return Err(PartitionError::Argument(format!(
            "assignment lists {} vertices, graph has {n}",
            out.len()
        )));
    }
    Ok(out)
}

pub fn write_assignment<W: Write>(assignment: &[u32], sink: W) -> io::Result<()> {
    let mut out = BufWriter::new(sink);
    for part in assignment {
        writeln!(out, "{part}")?;
    }
    out.flush()
}
