use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::graph::{csr_to_dense, saturating_add, Distance, DistanceMatrix, Graph};
use crate::kernels::{cross_merge, cross_merge_entry, fw_blocked, inject, restrict, BoundaryIndex, FwStats};
use crate::parallel::{par_map, par_map_mut};
use crate::partition::{
    build_with_closures, FwKernel, KPolicy, Level, PartitionHierarchy, TopSolve, DEFAULT_TILE_LIMIT,
};

use super::trace::{ComponentTrace, ExecutionTrace, LevelTrace, MergeTrace, TopTrace};
use super::SolveError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub tile_limit: usize,
    /// Compute every level-0 cross block up front instead of on query.
    pub materialize_cross: bool,
    pub workers: usize,
    pub kernel: FwKernel,
    pub policy: KPolicy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            tile_limit: DEFAULT_TILE_LIMIT,
            materialize_cross: false,
            workers: 1,
            kernel: FwKernel::Classic,
            policy: KPolicy::default(),
        }
    }
}

impl SolverConfig {
    pub fn with_tile_limit(tile_limit: usize) -> Self {
        SolverConfig {
            tile_limit,
            ..SolverConfig::default()
        }
    }

    fn validate(&self) -> Result<(), SolveError> {
        if self.tile_limit < 2 {
            return Err(SolveError::Argument(format!("tile limit must be at least 2, got {}", self.tile_limit)));
        }
        if self.workers == 0 {
            return Err(SolveError::Argument("worker count must be positive".into()));
        }
        Ok(())
    }
}

/// Exact APSP in factored form: closed level-0 component blocks and the
/// closure over the level-0 boundary vertices.
#[derive(Clone, Debug, PartialEq)]
pub struct ApspResult {
    pub hierarchy: PartitionHierarchy,
    /// Level-0 component matrices after injection, component vertex order.
    pub component_distances: Vec<DistanceMatrix>,
    /// Closure of the level-0 boundary graph, boundary-graph id order.
    pub top_db: DistanceMatrix,
    pub trace: ExecutionTrace,
    boundary_index: Vec<BoundaryIndex>,
    cross: BTreeMap<(u32, u32), DistanceMatrix>,
}

pub fn solve_apsp(g: &Graph, cfg: &SolverConfig) -> Result<ApspResult, SolveError> {
    cfg.validate()?;
    let (hierarchy, closures) = build_with_closures(g, cfg.tile_limit, &cfg.policy, cfg.kernel, cfg.workers)?;

    let top_graph = &hierarchy.top_graph().graph;
    let mut db = csr_to_dense(top_graph, None)?;
    let top_stats = match hierarchy.top {
        TopSolve::Direct => cfg.kernel.run(&mut db),
        TopSolve::Blocked { block } => fw_blocked(&mut db, block)?,
    };
    let top = TopTrace {
        vertices: top_graph.n(),
        edges: top_graph.edge_count(),
        solve: hierarchy.top,
        stats: top_stats,
    };

    let mut level_traces: Vec<Option<LevelTrace>> = vec![None; hierarchy.depth()];
    let mut level0: Option<(Vec<DistanceMatrix>, Vec<BoundaryIndex>)> = None;
    for (lv, closure) in hierarchy.levels.iter().zip(closures).rev() {
        let indices = boundary_indices(lv)?;
        let mut jobs: Vec<(DistanceMatrix, &BoundaryIndex)> = closure.intra.into_iter().zip(&indices).collect();
        let step3 = par_map_mut(cfg.workers, &mut jobs, |(d, bi)| reclose(d, &db, bi, cfg.kernel));
        let mats: Vec<DistanceMatrix> = jobs.into_iter().map(|(d, _)| d).collect();
        let mut step3_results = Vec::with_capacity(mats.len());
        for r in step3 {
            step3_results.push(r?);
        }

        let merges = merge_shapes(lv);
        let components = lv
            .components
            .iter()
            .zip(closure.stats)
            .zip(step3_results)
            .map(|((c, closure), (injected, reclosure))| ComponentTrace {
                size: c.len(),
                boundary: c.boundary_count,
                closure,
                injected,
                reclosure,
            })
            .collect();
        let input_graph = hierarchy.level_graph(g, lv.level);
        level_traces[lv.level] = Some(LevelTrace {
            level: lv.level,
            vertices: lv.vertex_count(),
            edges: input_graph.edge_count(),
            components,
            boundary_vertices: lv.boundary_graph.vertex_count(),
            boundary_edges: lv.boundary_graph.graph.edge_count(),
            merges,
        });

        if lv.level > 0 {
            db = level_closure(lv, &mats, &indices, &db, cfg.workers)?;
        } else {
            level0 = Some((mats, indices));
        }
    }

    let (component_distances, boundary_index) = level0.expect("hierarchy has level 0");
    let trace = ExecutionTrace {
        vertices: g.n(),
        edges: g.edge_count(),
        tile_limit: cfg.tile_limit,
        levels: level_traces.into_iter().map(|t| t.expect("every level traced")).collect(),
        top,
    };
    let mut result = ApspResult {
        hierarchy,
        component_distances,
        top_db: db,
        trace,
        boundary_index,
        cross: BTreeMap::new(),
    };
    if cfg.materialize_cross {
        result.cross = result.cross_blocks(cfg.workers)?;
    }
    Ok(result)
}

fn boundary_indices(lv: &Level) -> Result<Vec<BoundaryIndex>, SolveError> {
    lv.boundary_ids()
        .into_iter()
        .map(|ids| Ok(BoundaryIndex::new((0..ids.len()).collect(), ids)?))
        .collect()
}

/// Min-injects the boundary closure and re-closes the component.
fn reclose(
    d: &mut DistanceMatrix,
    db: &DistanceMatrix,
    bi: &BoundaryIndex,
    kernel: FwKernel,
) -> Result<(u64, Option<FwStats>), SolveError> {
    if bi.is_empty() {
        return Ok((0, None));
    }
    let block = restrict(db, &bi.in_db)?;
    let injected = inject(d, &block, &bi.local)?;
    Ok((injected, Some(kernel.run(d))))
}

/// Ordered component pairs that can reach each other through boundaries.
fn merge_shapes(lv: &Level) -> Vec<MergeTrace> {
    let mut out = Vec::new();
    for (a, ca) in lv.components.iter().enumerate() {
        for (b, cb) in lv.components.iter().enumerate() {
            if a != b && ca.boundary_count > 0 && cb.boundary_count > 0 {
                out.push(MergeTrace {
                    source: a,
                    target: b,
                    rows: ca.len(),
                    source_boundary: ca.boundary_count,
                    target_boundary: cb.boundary_count,
                    cols: cb.len(),
                });
            }
        }
    }
    out
}

/// Full closure of a level's graph, which is the boundary matrix of the
/// level below.
fn level_closure(
    lv: &Level,
    mats: &[DistanceMatrix],
    indices: &[BoundaryIndex],
    db: &DistanceMatrix,
    workers: usize,
) -> Result<DistanceMatrix, SolveError> {
    let n = lv.vertex_count();
    let sources: Vec<usize> = (0..lv.components.len()).collect();
    let strips = par_map(workers, &sources, |&a| -> Result<Vec<(usize, DistanceMatrix)>, SolveError> {
        let mut strip = Vec::with_capacity(lv.components.len());
        for b in 0..lv.components.len() {
            if a == b {
                strip.push((b, mats[a].clone()));
            } else if !indices[a].is_empty() && !indices[b].is_empty() {
                strip.push((b, cross_merge(&mats[a], db, &mats[b], &indices[a], &indices[b])?));
            }
        }
        Ok(strip)
    });
    let mut out = DistanceMatrix::unreachable(n, n);
    for (a, strip) in strips.into_iter().enumerate() {
        let rows = &lv.components[a].vertices;
        for (b, block) in strip? {
            let cols = &lv.components[b].vertices;
            for (i, &u) in rows.iter().enumerate() {
                let dst = out.row_mut(u as usize);
                for (j, &v) in cols.iter().enumerate() {
                    dst[v as usize] = block[(i, j)];
                }
            }
        }
    }
    Ok(out)
}

impl ApspResult {
    pub fn vertex_count(&self) -> usize {
        self.hierarchy.vertex_count()
    }

    fn level0(&self) -> &Level {
        &self.hierarchy.levels[0]
    }

    /// Component index and local position of vertex `v`.
    pub fn locate(&self, v: usize) -> Option<(usize, usize)> {
        let l0 = self.level0();
        (v < l0.vertex_count()).then(|| (l0.assignment[v] as usize, l0.position[v] as usize))
    }

    pub fn is_cross_materialized(&self) -> bool {
        !self.cross.is_empty()
    }

    /// Materialized level-0 cross blocks keyed by (source, target) component.
    pub fn cross_blocks_cached(&self) -> &BTreeMap<(u32, u32), DistanceMatrix> {
        &self.cross
    }

    pub fn boundary_index(&self, component: usize) -> &BoundaryIndex {
        &self.boundary_index[component]
    }

    pub fn query(&self, u: usize, v: usize) -> Result<Distance, SolveError> {
        let n = self.vertex_count();
        let ((cu, pu), (cv, pv)) = match (self.locate(u), self.locate(v)) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(SolveError::Argument(format!("query ({u}, {v}) outside 0..{n}"))),
        };
        if cu == cv {
            return Ok(self.component_distances[cu][(pu, pv)]);
        }
        if let Some(block) = self.cross.get(&(cu as u32, cv as u32)) {
            return Ok(block[(pu, pv)]);
        }
        if self.boundary_index[cu].is_empty() || self.boundary_index[cv].is_empty() {
            return Ok(Distance::INF);
        }
        Ok(cross_merge_entry(
            &self.component_distances[cu],
            &self.top_db,
            &self.component_distances[cv],
            &self.boundary_index[cu],
            &self.boundary_index[cv],
            pu,
            pv,
        )?)
    }

    /// Distances from `u` to every vertex, in original id order.
    pub fn row(&self, u: usize) -> Result<Vec<Distance>, SolveError> {
        let n = self.vertex_count();
        let (cu, pu) = self
            .locate(u)
            .ok_or_else(|| SolveError::Argument(format!("source {u} outside 0..{n}")))?;
        let l0 = self.level0();
        let src = &self.component_distances[cu];
        let bi = &self.boundary_index[cu];
        // via[j]: best distance from u to boundary vertex j of the level-0
        // boundary graph
        let mut via = vec![Distance::INF; self.top_db.rows()];
        for (&local, &id) in bi.local.iter().zip(&bi.in_db) {
            let head = src[(pu, local)];
            if head.is_inf() {
                continue;
            }
            for (slot, &d) in via.iter_mut().zip(self.top_db.row(id)) {
                *slot = (*slot).min(saturating_add(head, d));
            }
        }
        let mut out = vec![Distance::INF; n];
        for (c, comp) in l0.components.iter().enumerate() {
            let d = &self.component_distances[c];
            if c == cu {
                for (pos, &v) in comp.vertices.iter().enumerate() {
                    out[v as usize] = src[(pu, pos)];
                }
                continue;
            }
            let entry = &self.boundary_index[c];
            for (pos, &v) in comp.vertices.iter().enumerate() {
                let mut best = Distance::INF;
                for (&local, &id) in entry.local.iter().zip(&entry.in_db) {
                    best = best.min(saturating_add(via[id], d[(local, pos)]));
                }
                out[v as usize] = best;
            }
        }
        Ok(out)
    }

    /// The full `n x n` distance matrix.
    pub fn to_dense(&self) -> DistanceMatrix {
        let n = self.vertex_count();
        let mut out = DistanceMatrix::unreachable(n, n);
        for u in 0..n {
            out.row_mut(u).copy_from_slice(&self.row(u).expect("u is in range"));
        }
        out
    }

    /// Every level-0 cross block between components that both have
    /// boundary vertices.
    pub fn cross_blocks(&self, workers: usize) -> Result<BTreeMap<(u32, u32), DistanceMatrix>, SolveError> {
        let shapes = merge_shapes(self.level0());
        let blocks = par_map(workers, &shapes, |m| {
            cross_merge(
                &self.component_distances[m.source],
                &self.top_db,
                &self.component_distances[m.target],
                &self.boundary_index[m.source],
                &self.boundary_index[m.target],
            )
        });
        let mut out = BTreeMap::new();
        for (m, block) in shapes.iter().zip(blocks) {
            out.insert((m.source as u32, m.target as u32), block?);
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{gen_er, gen_nws};
    use crate::kernels::fw_classic;

    fn dense_oracle(g: &Graph) -> DistanceMatrix {
        let mut d = csr_to_dense(g, None).unwrap();
        fw_classic(&mut d).unwrap();
        d
    }

    #[test]
    fn fits_one_tile() {
        let g = gen_er(30, 4.0, 2).unwrap();
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(64)).unwrap();
        assert_eq!(r.hierarchy.depth(), 1);
        assert_eq!(r.component_distances[0], dense_oracle(&g));
        assert_eq!(r.top_db.rows(), 0);
    }

    #[test]
    fn deep_ring_matches_dense_fw() {
        let g = gen_nws(300, 4, 0.0, 5).unwrap();
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(16)).unwrap();
        assert!(r.hierarchy.depth() >= 3);
        assert_eq!(r.to_dense(), dense_oracle(&g));
    }

    #[test]
    fn stalled_random_graph_matches_dense_fw() {
        let g = gen_er(150, 8.0, 9).unwrap();
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(16)).unwrap();
        assert!(matches!(r.hierarchy.top, TopSolve::Blocked { .. }));
        assert_eq!(r.to_dense(), dense_oracle(&g));
    }

    #[test]
    fn query_paths_agree() {
        let g = gen_nws(120, 4, 0.05, 1).unwrap();
        let mut cfg = SolverConfig::with_tile_limit(16);
        let lazy = solve_apsp(&g, &cfg).unwrap();
        cfg.materialize_cross = true;
        let eager = solve_apsp(&g, &cfg).unwrap();
        assert!(eager.is_cross_materialized());
        let dense = dense_oracle(&g);
        for u in 0..g.n() {
            for v in 0..g.n() {
                assert_eq!(lazy.query(u, v).unwrap(), dense[(u, v)]);
                assert_eq!(eager.query(u, v).unwrap(), dense[(u, v)]);
            }
        }
        assert!(lazy.query(0, 120).is_err());
    }

    #[test]
    fn disconnected_pieces_stay_unreachable() {
        let mut edges: Vec<(u32, u32, u32)> = Vec::new();
        for i in 0..20u32 {
            edges.push((i, (i + 1) % 20, 1));
            edges.push((20 + i, 20 + (i + 1) % 20, 1));
        }
        let g = Graph::from_edges(40, edges).unwrap();
        let r = solve_apsp(&g, &SolverConfig::with_tile_limit(8)).unwrap();
        assert_eq!(r.query(0, 25).unwrap(), Distance::INF);
        assert_eq!(r.query(0, 19).unwrap(), Distance(19));
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let g = gen_nws(200, 6, 0.02, 4).unwrap();
        let mut cfg = SolverConfig::with_tile_limit(32);
        let one = solve_apsp(&g, &cfg).unwrap();
        cfg.workers = 4;
        let four = solve_apsp(&g, &cfg).unwrap();
        assert_eq!(one, four);
    }

    #[test]
    fn remapped_kernel_gives_same_result() {
        let g = gen_er(90, 4.0, 3).unwrap();
        let mut cfg = SolverConfig::with_tile_limit(32);
        let classic = solve_apsp(&g, &cfg).unwrap();
        cfg.kernel = FwKernel::Remapped;
        let remapped = solve_apsp(&g, &cfg).unwrap();
        assert_eq!(classic.to_dense(), remapped.to_dense());
        assert_eq!(classic.trace.total_updates(), remapped.trace.total_updates());
    }
}
