use serde::{Deserialize, Serialize};

use crate::kernels::FwStats;
use crate::partition::TopSolve;

/// Everything the solver did, by shape: the input to the device model.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExecutionTrace {
    pub vertices: usize,
    pub edges: usize,
    pub tile_limit: usize,
    pub levels: Vec<LevelTrace>,
    pub top: TopTrace,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelTrace {
    pub level: usize,
    pub vertices: usize,
    pub edges: usize,
    pub components: Vec<ComponentTrace>,
    pub boundary_vertices: usize,
    pub boundary_edges: usize,
    /// Cross-component merges of this level. Above level 0 they build the
    /// closure handed down as the next boundary matrix; at level 0 they are
    /// the cross blocks, whether materialized or left to queries.
    pub merges: Vec<MergeTrace>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComponentTrace {
    pub size: usize,
    pub boundary: usize,
    /// Closure of the component's own arcs.
    pub closure: FwStats,
    /// Entries lowered by injecting the boundary closure.
    pub injected: u64,
    /// FW re-run after injection; absent without boundary.
    pub reclosure: Option<FwStats>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MergeTrace {
    pub source: usize,
    pub target: usize,
    pub rows: usize,
    pub source_boundary: usize,
    pub target_boundary: usize,
    pub cols: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TopTrace {
    pub vertices: usize,
    pub edges: usize,
    pub solve: TopSolve,
    pub stats: FwStats,
}

impl ExecutionTrace {
    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Strict updates across every FW pass in the run.
    pub fn total_updates(&self) -> u64 {
        let comps: u64 = self
            .levels
            .iter()
            .flat_map(|l| &l.components)
            .map(|c| c.closure.updates + c.reclosure.map_or(0, |r| r.updates))
            .sum();
        comps + self.top.stats.updates
    }
}
