use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::graph::{dense_to_csr, write_csr, DistanceMatrix, Graph};
use crate::partition::TopSolve;

use super::recursive::{ApspResult, SolverConfig};
use super::SolveError;

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

/// Index of a persisted result directory.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub schema_version: u32,
    pub tool_version: String,
    pub config: SolverConfig,
    pub vertices: usize,
    pub edges: usize,
    pub top: TopSolve,
    pub levels: Vec<LevelShape>,
    /// Level-0 component blocks; `vertices` maps local ids to original ids.
    pub components: Vec<BlockFile>,
    /// Closure over the level-0 boundary vertices.
    pub boundary: BlockFile,
    /// Cross blocks stored bipartite: ids `0..rows` are the source
    /// component's vertices, `rows..rows + cols` the target's.
    pub cross: Vec<CrossFile>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LevelShape {
    pub level: usize,
    pub vertices: usize,
    pub component_sizes: Vec<usize>,
    pub boundary_sizes: Vec<usize>,
    pub boundary_graph_vertices: usize,
    pub boundary_graph_edges: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BlockFile {
    pub file: String,
    pub vertices: Vec<u32>,
    pub boundary_count: usize,
    pub finite_entries: usize,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossFile {
    pub source: u32,
    pub target: u32,
    pub file: String,
    pub sha256: String,
}

fn write_block(dir: &Path, name: &str, g: &Graph) -> Result<String, SolveError> {
    let mut bytes = Vec::new();
    write_csr(g, &mut bytes)?;
    fs::write(dir.join(name), &bytes)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}

fn bipartite(block: &DistanceMatrix) -> Graph {
    let rows = block.rows();
    let mut arcs = Vec::new();
    for i in 0..rows {
        for (j, w) in block.row(i).iter().enumerate() {
            if w.is_finite() {
                arcs.push((i as u32, (rows + j) as u32, w.get()));
            }
        }
    }
    Graph::from_checked_arcs(rows + block.cols(), arcs)
}

/// Writes every distance block as binary CSR plus `manifest.json`. Output
/// is a pure function of the result and config.
pub fn write_result(r: &ApspResult, cfg: &SolverConfig, dir: &Path) -> Result<Manifest, SolveError> {
    fs::create_dir_all(dir.join("blocks"))?;
    let l0 = &r.hierarchy.levels[0];

    let mut components = Vec::with_capacity(l0.components.len());
    for (c, comp) in l0.components.iter().enumerate() {
        let d = &r.component_distances[c];
        let file = format!("blocks/component_{c:05}.csr");
        let sha256 = write_block(dir, &file, &dense_to_csr(d))?;
        components.push(BlockFile {
            file,
            vertices: comp.vertices.clone(),
            boundary_count: comp.boundary_count,
            finite_entries: d.finite_count(),
            sha256,
        });
    }

    let boundary_vertices: Vec<u32> = l0
        .boundary_graph
        .origin_map
        .iter()
        .map(|&(c, p)| l0.components[c as usize].vertices[p as usize])
        .collect();
    let file = "blocks/boundary.csr".to_string();
    let boundary = BlockFile {
        sha256: write_block(dir, &file, &dense_to_csr(&r.top_db))?,
        file,
        boundary_count: boundary_vertices.len(),
        vertices: boundary_vertices,
        finite_entries: r.top_db.finite_count(),
    };

    let mut cross = Vec::new();
    for (&(a, b), block) in r.cross_blocks_cached() {
        let file = format!("blocks/cross_{a:05}_{b:05}.csr");
        let sha256 = write_block(dir, &file, &bipartite(block))?;
        cross.push(CrossFile {
            source: a,
            target: b,
            file,
            sha256,
        });
    }

    let levels = r
        .hierarchy
        .levels
        .iter()
        .map(|lv| LevelShape {
            level: lv.level,
            vertices: lv.vertex_count(),
            component_sizes: lv.components.iter().map(|c| c.len()).collect(),
            boundary_sizes: lv.boundary_sizes(),
            boundary_graph_vertices: lv.boundary_graph.vertex_count(),
            boundary_graph_edges: lv.boundary_graph.graph.edge_count(),
        })
        .collect();

    let manifest = Manifest {
        schema_version: MANIFEST_SCHEMA_VERSION,
        tool_version: crate::TOOL_VERSION.to_string(),
        config: cfg.clone(),
        vertices: r.trace.vertices,
        edges: r.trace.edges,
        top: r.hierarchy.top,
        levels,
        components,
        boundary,
        cross,
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(dir.join("manifest.json"), json)?;
    Ok(manifest)
}
