use serde::{Deserialize, Serialize};

use super::{Distance, GraphError};

/// Directed weighted graph in compressed sparse row form.
///
/// Canonical on construction: rows sorted by destination, no self-loops,
/// parallel arcs collapsed to their minimum weight, every weight finite.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    rowptr: Vec<usize>,
    col: Vec<u32>,
    val: Vec<u32>,
}

impl Graph {
    /// Graph with `n` vertices and no arcs.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            rowptr: vec![0; n + 1],
            col: Vec::new(),
            val: Vec::new(),
        }
    }

    /// Builds a canonical graph from an arc list in any order.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (u32, u32, u32)>,
    {
        let mut arcs: Vec<(u32, u32, u32)> = Vec::new();
        for (u, v, w) in edges {
            for id in [u, v] {
                if id as usize >= n {
                    return Err(GraphError::VertexOutOfRange { id: id as u64, n });
                }
            }
            if w == u32::MAX {
                return Err(GraphError::InfiniteWeight { u, v });
            }
            if u != v {
                arcs.push((u, v, w));
            }
        }
        Ok(Self::from_checked_arcs(n, arcs))
    }

    /// Arcs are known to be in range, finite and loop-free.
    pub(crate) fn from_checked_arcs(n: usize, mut arcs: Vec<(u32, u32, u32)>) -> Self {
        arcs.sort_unstable();
        arcs.dedup_by(|next, kept| next.0 == kept.0 && next.1 == kept.1);

        let mut rowptr = vec![0usize; n + 1];
        for &(u, _, _) in &arcs {
            rowptr[u as usize + 1] += 1;
        }
        for i in 0..n {
            rowptr[i + 1] += rowptr[i];
        }
        let col = arcs.iter().map(|a| a.1).collect();
        let val = arcs.iter().map(|a| a.2).collect();
        Graph { n, rowptr, col, val }
    }

    /// Validates raw CSR arrays, e.g. from the binary format.
    pub fn from_raw_parts(
        n: usize,
        rowptr: Vec<usize>,
        col: Vec<u32>,
        val: Vec<u32>,
    ) -> Result<Self, GraphError> {
        let bad = |why: &str| GraphError::InvalidCsr(why.to_string());
        if rowptr.len() != n + 1 {
            return Err(bad("rowptr length is not n+1"));
        }
        if rowptr[0] != 0 || rowptr[n] != col.len() || col.len() != val.len() {
            return Err(bad("rowptr bounds disagree with col/val lengths"));
        }
        for u in 0..n {
            let (lo, hi) = (rowptr[u], rowptr[u + 1]);
            if lo > hi {
                return Err(bad("rowptr is decreasing"));
            }
            let row = &col[lo..hi];
            for (idx, &v) in row.iter().enumerate() {
                if v as usize >= n {
                    return Err(GraphError::VertexOutOfRange { id: v as u64, n });
                }
                if v as usize == u {
                    return Err(bad("self-loop in canonical CSR"));
                }
                if idx > 0 && row[idx - 1] >= v {
                    return Err(bad("row columns not strictly increasing"));
                }
                if val[lo + idx] == u32::MAX {
                    return Err(GraphError::InfiniteWeight { u: u as u32, v });
                }
            }
        }
        Ok(Graph { n, rowptr, col, val })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.col.len()
    }

    pub fn rowptr(&self) -> &[usize] {
        &self.rowptr
    }

    pub fn col(&self) -> &[u32] {
        &self.col
    }

    pub fn val(&self) -> &[u32] {
        &self.val
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.rowptr[u + 1] - self.rowptr[u]
    }

    /// Outgoing `(destination, weight)` pairs of `u`, ascending by destination.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, Distance)> + '_ {
        let (lo, hi) = (self.rowptr[u], self.rowptr[u + 1]);
        self.col[lo..hi]
            .iter()
            .zip(&self.val[lo..hi])
            .map(|(&v, &w)| (v as usize, Distance(w)))
    }

    /// Every arc as `(u, v, w)` in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        (0..self.n).flat_map(move |u| {
            let (lo, hi) = (self.rowptr[u], self.rowptr[u + 1]);
            (lo..hi).map(move |e| (u as u32, self.col[e], self.val[e]))
        })
    }

    pub fn weight(&self, u: usize, v: usize) -> Option<Distance> {
        let (lo, hi) = (self.rowptr[u], self.rowptr[u + 1]);
        self.col[lo..hi]
            .binary_search(&(v as u32))
            .ok()
            .map(|i| Distance(self.val[lo + i]))
    }

    /// Reverse graph (every arc flipped).
    pub fn transpose(&self) -> Graph {
        let arcs = self.edges().map(|(u, v, w)| (v, u, w)).collect();
        Graph::from_checked_arcs(self.n, arcs)
    }

    /// Undirected adjacency: for every arc `u -> v` both `v` in `adj[u]` and
    /// `u` in `adj[v]`, each list sorted and deduplicated.
    pub fn undirected_adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.n];
        for (u, v, _) in self.edges() {
            adj[u as usize].push(v);
            adj[v as usize].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        adj
    }

    /// Subgraph induced by `vertices`, renumbered by position in the slice.
    pub fn induced(&self, vertices: &[u32]) -> Result<Graph, GraphError> {
        let mut local = vec![u32::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            let slot = local
                .get_mut(v as usize)
                .ok_or(GraphError::VertexOutOfRange { id: v as u64, n: self.n })?;
            if *slot != u32::MAX {
                return Err(GraphError::DuplicateVertex(v));
            }
            *slot = i as u32;
        }
        let mut arcs = Vec::new();
        for (i, &u) in vertices.iter().enumerate() {
            for (v, w) in self.neighbors(u as usize) {
                let j = local[v];
                if j != u32::MAX {
                    arcs.push((i as u32, j, w.0));
                }
            }
        }
        Ok(Graph::from_checked_arcs(vertices.len(), arcs))
    }
}
