use serde::{Deserialize, Serialize};

use crate::graph::{DistanceMatrix, Graph};

use super::PartitionError;

/// One part of a level's graph, boundary vertices first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub level: usize,
    pub index: usize,
    /// Vertex ids of the level's graph: the boundary vertices ascending,
    /// then the internal vertices ascending.
    pub vertices: Vec<u32>,
    pub boundary_count: usize,
}

impl Component {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn boundary(&self) -> &[u32] {
        &self.vertices[..self.boundary_count]
    }

    pub fn internal(&self) -> &[u32] {
        &self.vertices[self.boundary_count..]
    }
}

/// The reduced graph over every boundary vertex of one level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryGraph {
    pub level: usize,
    pub graph: Graph,
    /// Boundary-graph vertex id -> (component index, position in component).
    pub origin_map: Vec<(u32, u32)>,
}

impl BoundaryGraph {
    pub fn vertex_count(&self) -> usize {
        self.graph.n()
    }
}

fn check_assignment(g: &Graph, assignment: &[u32]) -> Result<(), PartitionError> {
    if assignment.len() != g.n() {
        return Err(PartitionError::Argument(format!(
            "assignment covers {} vertices, graph has {}",
            assignment.len(),
            g.n()
        )));
    }
    Ok(())
}

/// Whether each vertex has an in- or out-arc into a different part.
pub fn boundary_mask(g: &Graph, assignment: &[u32]) -> Result<Vec<bool>, PartitionError> {
    check_assignment(g, assignment)?;
    let mut mask = vec![false; g.n()];
    for (u, v, _) in g.edges() {
        if assignment[u as usize] != assignment[v as usize] {
            mask[u as usize] = true;
            mask[v as usize] = true;
        }
    }
    Ok(mask)
}

/// Vertices of `part` with at least one arc (either direction) to another
/// part, ascending.
pub fn find_boundary(g: &Graph, assignment: &[u32], part: u32) -> Result<Vec<u32>, PartitionError> {
    let mask = boundary_mask(g, assignment)?;
    let parts = assignment.iter().copied().max().map_or(0, |m| m + 1);
    if part >= parts {
        return Err(PartitionError::Argument(format!(
            "part {part} does not exist ({parts} parts)"
        )));
    }
    Ok((0..g.n())
        .filter(|&v| assignment[v] == part && mask[v])
        .map(|v| v as u32)
        .collect())
}

/// Components of `g` from an assignment, in part order, each laid out
/// boundary-first. Empty parts are skipped.
pub fn components_from_assignment(
    g: &Graph,
    assignment: &[u32],
    level: usize,
) -> Result<Vec<Component>, PartitionError> {
    let mask = boundary_mask(g, assignment)?;
    let parts = assignment.iter().copied().max().map_or(0, |m| m as usize + 1);
    let mut boundary: Vec<Vec<u32>> = vec![Vec::new(); parts];
    let mut internal: Vec<Vec<u32>> = vec![Vec::new(); parts];
    for v in 0..g.n() {
        let p = assignment[v] as usize;
        if mask[v] {
            boundary[p].push(v as u32);
        } else {
            internal[p].push(v as u32);
        }
    }
    let mut out = Vec::new();
    for (b, i) in boundary.into_iter().zip(internal) {
        if b.is_empty() && i.is_empty() {
            continue;
        }
        let boundary_count = b.len();
        let mut vertices = b;
        vertices.extend(i);
        out.push(Component {
            level,
            index: out.len(),
            vertices,
            boundary_count,
        });
    }
    Ok(out)
}

/// Builds the boundary graph of one level.
///
/// Vertices are the components' boundary vertices, concatenated in
/// component order. Arcs are every arc of `g` between two boundary vertices
/// (which includes every arc joining two components) plus a virtual arc
/// `u -> w` for each ordered boundary pair of one component with finite
/// `intra[c][u][w]`; parallel candidates keep the minimum.
///
/// `intra[c]` is either the full closed matrix of component `c` (in its
/// vertex order) or just its boundary block.
pub fn build_boundary_graph(
    g: &Graph,
    components: &[Component],
    intra: &[DistanceMatrix],
) -> Result<BoundaryGraph, PartitionError> {
    if intra.len() != components.len() {
        return Err(PartitionError::Consistency(format!(
            "{} intra matrices for {} components",
            intra.len(),
            components.len()
        )));
    }
    let level = components.first().map_or(0, |c| c.level);
    let mut bg_id = vec![u32::MAX; g.n()];
    let mut comp_of = vec![u32::MAX; g.n()];
    let mut origin_map = Vec::new();
    for (ci, c) in components.iter().enumerate() {
        let side = intra[ci].rows();
        if !intra[ci].is_square() || (side != c.len() && side != c.boundary_count) {
            return Err(PartitionError::Consistency(format!(
                "component {ci} has {} vertices ({} boundary) but a {}x{} intra matrix",
                c.len(),
                c.boundary_count,
                intra[ci].rows(),
                intra[ci].cols()
            )));
        }
        for (pos, &v) in c.vertices.iter().enumerate() {
            let slot = comp_of
                .get_mut(v as usize)
                .ok_or(PartitionError::Consistency(format!("vertex {v} out of range")))?;
            if *slot != u32::MAX {
                return Err(PartitionError::Consistency(format!("vertex {v} in two components")));
            }
            *slot = ci as u32;
            if pos < c.boundary_count {
                bg_id[v as usize] = origin_map.len() as u32;
                origin_map.push((ci as u32, pos as u32));
            }
        }
    }
    if comp_of.contains(&u32::MAX) {
        return Err(PartitionError::Consistency("components do not cover the graph".into()));
    }

    let mut arcs = Vec::new();
    for (u, v, w) in g.edges() {
        let (bu, bv) = (bg_id[u as usize], bg_id[v as usize]);
        if comp_of[u as usize] != comp_of[v as usize] && (bu == u32::MAX || bv == u32::MAX) {
            return Err(PartitionError::Consistency(format!(
                "cross arc {u}->{v} leaves a vertex not ordered as boundary"
            )));
        }
        if bu != u32::MAX && bv != u32::MAX {
            arcs.push((bu, bv, w));
        }
    }
    for (ci, c) in components.iter().enumerate() {
        let d = &intra[ci];
        let b = c.boundary();
        for a in 0..b.len() {
            for z in 0..b.len() {
                let w = d[(a, z)];
                if a != z && w.is_finite() {
                    arcs.push((bg_id[b[a] as usize], bg_id[b[z] as usize], w.get()));
                }
            }
        }
    }
    Ok(BoundaryGraph {
        level,
        graph: Graph::from_checked_arcs(origin_map.len(), arcs),
        origin_map,
    })
}
