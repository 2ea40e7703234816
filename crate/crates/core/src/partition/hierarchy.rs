//! The recursion skeleton: partition, close each component, build the
//! boundary graph, and repeat on the boundary graph until it fits a tile.

use serde::{Deserialize, Serialize};

use crate::graph::{csr_to_dense, DistanceMatrix, Graph};
use crate::kernels::{fw_classic, fw_remapped, FwStats};
use crate::parallel::par_map;

use super::boundary::{boundary_mask, build_boundary_graph, components_from_assignment, BoundaryGraph, Component};
use super::kway::{partition_kway, partition_weighted};
use super::PartitionError;

/// Default tile limit: one 1024 x 1024 PCM unit per distance block.
pub const DEFAULT_TILE_LIMIT: usize = 1024;

/// How many parts each level is split into, and how hard to push.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct KPolicy {
    /// Parts per level; `None` means `ceil(n / tile_limit)`.
    pub parts: Option<usize>,
    pub imbalance: f64,
    /// Recursion stops once a boundary graph keeps more than this fraction
    /// of its level's vertices; that boundary graph is then closed with the
    /// blocked kernel instead.
    pub max_boundary_fraction: f64,
    /// Externally computed level-0 assignment (e.g. from METIS). Oversize
    /// parts are still re-split to the tile limit.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub level0_assignment: Option<Vec<u32>>,
}

impl Default for KPolicy {
    fn default() -> Self {
        KPolicy {
            parts: None,
            imbalance: 1.03,
            max_boundary_fraction: 0.9,
            level0_assignment: None,
        }
    }
}

/// Which Floyd–Warshall kernel closes the component blocks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FwKernel {
    #[default]
    Classic,
    Remapped,
}

impl FwKernel {
    pub fn run(self, d: &mut DistanceMatrix) -> FwStats {
        let r = match self {
            FwKernel::Classic => fw_classic(d),
            FwKernel::Remapped => fw_remapped(d),
        };
        r.expect("component matrices have a zero diagonal")
    }
}

/// How the top boundary graph is closed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", tag = "kind")]
pub enum TopSolve {
    /// Fits one tile; a single FW pass.
    Direct,
    /// Recursion stalled above the tile limit; blocked FW with tile-sized
    /// blocks.
    Blocked { block: usize },
}

/// One recursion level: a partition of this level's graph and the
/// boundary graph it induces (which is the next level's graph).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Level {
    pub level: usize,
    /// Level-graph vertex id -> original vertex id.
    pub global_ids: Vec<u32>,
    /// Level-graph vertex id -> component index.
    pub assignment: Vec<u32>,
    /// Level-graph vertex id -> position inside its component.
    pub position: Vec<u32>,
    pub components: Vec<Component>,
    pub boundary_graph: BoundaryGraph,
}

impl Level {
    pub fn vertex_count(&self) -> usize {
        self.global_ids.len()
    }

    pub fn boundary_sizes(&self) -> Vec<usize> {
        self.components.iter().map(|c| c.boundary_count).collect()
    }

    pub fn mean_boundary_size(&self) -> f64 {
        if self.components.is_empty() {
            return 0.0;
        }
        self.boundary_sizes().iter().sum::<usize>() as f64 / self.components.len() as f64
    }

    /// Boundary-graph id of each component's boundary vertices, in
    /// component order.
    pub fn boundary_ids(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = self
            .components
            .iter()
            .map(|c| Vec::with_capacity(c.boundary_count))
            .collect();
        for (id, &(c, _)) in self.boundary_graph.origin_map.iter().enumerate() {
            out[c as usize].push(id);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionHierarchy {
    pub tile_limit: usize,
    pub levels: Vec<Level>,
    pub top: TopSolve,
}

impl PartitionHierarchy {
    pub fn vertex_count(&self) -> usize {
        self.levels.first().map_or(0, Level::vertex_count)
    }

    /// The boundary graph closed at the top of the recursion.
    pub fn top_graph(&self) -> &BoundaryGraph {
        &self.levels.last().expect("hierarchy has a level").boundary_graph
    }

    pub fn depth(&self) -> usize {
        self.levels.len()
    }

    /// Graph of `level` as seen by that level: the input graph at level 0,
    /// otherwise the previous level's boundary graph.
    pub fn level_graph<'a>(&'a self, input: &'a Graph, level: usize) -> &'a Graph {
        if level == 0 {
            input
        } else {
            &self.levels[level - 1].boundary_graph.graph
        }
    }
}

/// Component closures produced while building the hierarchy.
pub(crate) struct LevelClosure {
    /// Closed intra-component matrices, component vertex order.
    pub intra: Vec<DistanceMatrix>,
    pub stats: Vec<FwStats>,
}

/// Builds the recursion hierarchy of `g` for a tile limit.
pub fn build_hierarchy(g: &Graph, tile_limit: usize, policy: &KPolicy) -> Result<PartitionHierarchy, PartitionError> {
    build_with_closures(g, tile_limit, policy, FwKernel::Classic, 1).map(|(h, _)| h)
}

pub(crate) fn build_with_closures(
    g: &Graph,
    tile_limit: usize,
    policy: &KPolicy,
    kernel: FwKernel,
    workers: usize,
) -> Result<(PartitionHierarchy, Vec<LevelClosure>), PartitionError> {
    if tile_limit < 2 {
        return Err(PartitionError::Argument(format!("tile limit must be at least 2, got {tile_limit}")));
    }
    if !(policy.max_boundary_fraction > 0.0 && policy.max_boundary_fraction <= 1.0) {
        return Err(PartitionError::Argument("max_boundary_fraction must lie in (0, 1]".into()));
    }

    let mut levels: Vec<Level> = Vec::new();
    let mut closures: Vec<LevelClosure> = Vec::new();
    let mut global_ids: Vec<u32> = (0..g.n() as u32).collect();
    let mut current: Graph = g.clone();

    loop {
        let level = levels.len();
        let n = current.n();
        let assignment = if level == 0 && n <= tile_limit {
            vec![0; n]
        } else {
            let initial = match (&policy.level0_assignment, level) {
                (Some(a), 0) => {
                    if a.len() != n {
                        return Err(PartitionError::Argument(format!(
                            "imported assignment covers {} vertices, graph has {n}",
                            a.len()
                        )));
                    }
                    a.clone()
                }
                _ => {
                    let k = policy.parts.unwrap_or_else(|| n.div_ceil(tile_limit)).clamp(1, n.max(1));
                    partition_kway(&current, k, policy.imbalance)?
                }
            };
            let plain = enforce_tile_limit(&current, initial, tile_limit)?;
            match levels.last() {
                Some(prev) => {
                    let k = policy.parts.unwrap_or_else(|| n.div_ceil(tile_limit)).clamp(1, n.max(1));
                    let grouped = grouped_assignment(&current, &prev.boundary_graph.origin_map, k, tile_limit);
                    let grouped = enforce_tile_limit(&current, grouped, tile_limit)?;
                    if boundary_total(&current, &grouped)? < boundary_total(&current, &plain)? {
                        grouped
                    } else {
                        plain
                    }
                }
                _ => plain,
            }
        };

        let components = components_from_assignment(&current, &assignment, level)?;
        let dense_parts: Vec<&Component> = components.iter().collect();
        let results = par_map(workers, &dense_parts, |c| {
            let mut d = csr_to_dense(&current, Some(&c.vertices)).expect("component ids are valid");
            let stats = kernel.run(&mut d);
            (d, stats)
        });
        let (intra, stats): (Vec<_>, Vec<_>) = results.into_iter().unzip();
        let boundary_graph = build_boundary_graph(&current, &components, &intra)?;

        let mut comp_of = vec![0u32; n];
        let mut position = vec![0u32; n];
        for (ci, c) in components.iter().enumerate() {
            for (pos, &v) in c.vertices.iter().enumerate() {
                comp_of[v as usize] = ci as u32;
                position[v as usize] = pos as u32;
            }
        }

        let next_ids: Vec<u32> = boundary_graph
            .origin_map
            .iter()
            .map(|&(c, p)| global_ids[components[c as usize].vertices[p as usize] as usize])
            .collect();
        let next_graph = boundary_graph.graph.clone();
        let bg_n = next_graph.n();

        levels.push(Level {
            level,
            global_ids: std::mem::take(&mut global_ids),
            assignment: comp_of,
            position,
            components,
            boundary_graph,
        });
        closures.push(LevelClosure { intra, stats });

        if bg_n <= tile_limit {
            return Ok((
                PartitionHierarchy {
                    tile_limit,
                    levels,
                    top: TopSolve::Direct,
                },
                closures,
            ));
        }
        if bg_n as f64 > policy.max_boundary_fraction * n as f64 {
            return Ok((
                PartitionHierarchy {
                    tile_limit,
                    levels,
                    top: TopSolve::Blocked { block: tile_limit },
                },
                closures,
            ));
        }
        global_ids = next_ids;
        current = next_graph;
    }
}

/// Partitions a boundary graph without cutting through the virtual cliques
/// of the level below: each lower component's boundary set becomes one
/// weighted super-vertex.
fn grouped_assignment(g: &Graph, origin_map: &[(u32, u32)], k: usize, tile_limit: usize) -> Vec<u32> {
    let mut group_id = vec![u32::MAX; origin_map.iter().map(|&(c, _)| c as usize + 1).max().unwrap_or(0)];
    let mut weights: Vec<u32> = Vec::new();
    let mut group = Vec::with_capacity(origin_map.len());
    for &(c, _) in origin_map {
        let slot = &mut group_id[c as usize];
        if *slot == u32::MAX {
            *slot = weights.len() as u32;
            weights.push(0);
        }
        weights[*slot as usize] += 1;
        group.push(*slot);
    }
    let pairs = g
        .edges()
        .filter(|&(u, v, _)| group[u as usize] != group[v as usize])
        .map(|(u, v, _)| (group[u as usize], group[v as usize], 1))
        .collect();
    let parts = partition_weighted(weights, pairs, k, tile_limit as u64);
    group.iter().map(|&q| parts[q as usize]).collect()
}

fn boundary_total(g: &Graph, assignment: &[u32]) -> Result<usize, PartitionError> {
    Ok(boundary_mask(g, assignment)?.into_iter().filter(|&b| b).count())
}

/// Re-splits any part larger than `tile_limit` until every part fits, and
/// renumbers parts densely in order of first appearance of their lowest id.
fn enforce_tile_limit(g: &Graph, mut assignment: Vec<u32>, tile_limit: usize) -> Result<Vec<u32>, PartitionError> {
    let mut next_part = assignment.iter().copied().max().map_or(0, |m| m + 1);
    let mut queue: Vec<u32> = (0..next_part).collect();
    while let Some(part) = queue.pop() {
        let members: Vec<u32> = (0..g.n() as u32).filter(|&v| assignment[v as usize] == part).collect();
        if members.len() <= tile_limit {
            continue;
        }
        let sub = g.induced(&members)?;
        let k = members.len().div_ceil(tile_limit);
        let split = partition_kway(&sub, k, 1.0)?;
        for (i, &v) in members.iter().enumerate() {
            if split[i] != 0 {
                assignment[v as usize] = next_part + split[i] - 1;
            }
        }
        for p in 0..k as u32 - 1 {
            queue.push(next_part + p);
        }
        next_part += k as u32 - 1;
    }
    let mut relabel = vec![u32::MAX; next_part as usize];
    let mut fresh = 0u32;
    for a in assignment.iter_mut() {
        let slot = &mut relabel[*a as usize];
        if *slot == u32::MAX {
            *slot = fresh;
            fresh += 1;
        }
        *a = *slot;
    }
    Ok(assignment)
}
