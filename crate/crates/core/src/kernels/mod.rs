//! Tropical-semiring kernels shared by the solver and the simulator.

mod fw;
mod minplus;

pub use fw::{fw_blocked, fw_classic, fw_remapped, FwStats, PanelLayout, RemappedTile};
pub use minplus::{
    cross_merge, cross_merge_entry, gather, inject, min_plus_product, restrict, BoundaryIndex,
};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum KernelError {
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("diagonal entry {0} is not zero")]
    NonZeroDiagonal(usize),
    #[error("dimension mismatch: {left:?} vs {right:?}")]
    DimensionMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("index {0} appears twice")]
    DuplicateIndex(usize),
    #[error("inconsistent inputs: {0}")]
    Consistency(String),
    #[error("invalid argument: {0}")]
    Argument(String),
}
