//! Seeded synthetic graph generators.
//!
//! All randomness comes from a ChaCha8 stream keyed by the caller's seed, so
//! a `(parameters, seed)` pair always produces the same graph.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Graph, GraphError};

pub const MIN_WEIGHT: u32 = 1;
pub const MAX_WEIGHT: u32 = 1000;

/// Directed Erdős–Rényi graph: every ordered pair `(u, v)`, `u != v`, is an
/// arc independently with probability `degree / (n - 1)`.
pub fn gen_er(n: usize, degree: f64, seed: u64) -> Result<Graph, GraphError> {
    if n < 2 || !(degree > 0.0 && degree <= (n - 1) as f64) {
        return Err(GraphError::Argument(format!(
            "ER mean out-degree must lie in (0, n-1]; got degree={degree}, n={n}"
        )));
    }
    let p = degree / (n - 1) as f64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut arcs = Vec::with_capacity((degree * n as f64 * 1.1) as usize);
    for u in 0..n as u32 {
        for v in 0..n as u32 {
            if u != v && rng.gen_bool(p) {
                arcs.push((u, v, rng.gen_range(MIN_WEIGHT..=MAX_WEIGHT)));
            }
        }
    }
    Ok(Graph::from_checked_arcs(n, arcs))
}

/// Newman–Watts–Strogatz small world: a ring where each vertex links to its
/// `k` nearest neighbours, plus one shortcut per lattice edge with
/// probability `p`. Lattice edges are kept (shortcuts are added, never
/// rewired). Every edge becomes a symmetric arc pair with a shared weight.
pub fn gen_nws(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph, GraphError> {
    if k == 0 || !k.is_multiple_of(2) || k >= n {
        return Err(GraphError::Argument(format!(
            "NWS ring degree k must be even with 0 < k < n; got k={k}, n={n}"
        )));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GraphError::Argument(format!(
            "NWS shortcut probability must lie in [0, 1]; got {p}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut present: HashSet<(u32, u32)> = HashSet::new();
    let mut edges: Vec<(u32, u32, u32)> = Vec::new();
    let key = |a: u32, b: u32| (a.min(b), a.max(b));

    let mut lattice = Vec::with_capacity(n * k / 2);
    for u in 0..n {
        for offset in 1..=k / 2 {
            let v = (u + offset) % n;
            if present.insert(key(u as u32, v as u32)) {
                lattice.push((u as u32, v as u32));
                edges.push((u as u32, v as u32, rng.gen_range(MIN_WEIGHT..=MAX_WEIGHT)));
            }
        }
    }

    for &(u, _) in &lattice {
        if !rng.gen_bool(p) {
            continue;
        }
        // A handful of redraws; a saturated vertex simply gets no shortcut.
        for _ in 0..8 {
            let w = rng.gen_range(0..n as u32);
            if w != u && present.insert(key(u, w)) {
                edges.push((u, w, rng.gen_range(MIN_WEIGHT..=MAX_WEIGHT)));
                break;
            }
        }
    }

    let arcs = edges
        .into_iter()
        .flat_map(|(u, v, w)| [(u, v, w), (v, u, w)])
        .collect();
    Ok(Graph::from_checked_arcs(n, arcs))
}

/// Mean local clustering coefficient of the undirected skeleton.
pub fn average_clustering(g: &Graph) -> f64 {
    let adj = g.undirected_adjacency();
    if adj.is_empty() {
        return 0.0;
    }
    let mut total = 0.0;
    for nbrs in &adj {
        let d = nbrs.len();
        if d < 2 {
            continue;
        }
        let mut links = 0usize;
        for (i, &a) in nbrs.iter().enumerate() {
            let a_nbrs = &adj[a as usize];
            links += nbrs[i + 1..]
                .iter()
                .filter(|b| a_nbrs.binary_search(b).is_ok())
                .count();
        }
        total += 2.0 * links as f64 / (d * (d - 1)) as f64;
    }
    total / adj.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn er_complete_when_p_is_one() {
        let g = gen_er(4, 3.0, 11).unwrap();
        assert_eq!(g.edge_count(), 12);
        assert!(g.val().iter().all(|&w| (MIN_WEIGHT..=MAX_WEIGHT).contains(&w)));
    }

    #[test]
    fn er_is_deterministic() {
        assert_eq!(gen_er(200, 5.0, 3).unwrap(), gen_er(200, 5.0, 3).unwrap());
        assert_ne!(gen_er(200, 5.0, 3).unwrap(), gen_er(200, 5.0, 4).unwrap());
    }

    #[test]
    fn er_rejects_bad_degree() {
        assert!(gen_er(10, 0.0, 1).is_err());
        assert!(gen_er(10, 9.5, 1).is_err());
        assert!(gen_er(1, 0.5, 1).is_err());
    }

    #[test]
    fn nws_pure_ring() {
        let g = gen_nws(6, 2, 0.0, 5).unwrap();
        assert_eq!(g.edge_count(), 12);
        for u in 0..6 {
            assert_eq!(g.out_degree(u), 2);
            assert!(g.weight(u, (u + 1) % 6).is_some());
            assert_eq!(g.weight(u, (u + 1) % 6), g.weight((u + 1) % 6, u));
        }
    }

    #[test]
    fn nws_lattice_degree() {
        let g = gen_nws(6, 4, 0.0, 5).unwrap();
        assert!((0..6).all(|u| g.out_degree(u) == 4));
    }

    #[test]
    fn nws_rejects_bad_arguments() {
        assert!(gen_nws(6, 3, 0.1, 1).is_err());
        assert!(gen_nws(6, 6, 0.1, 1).is_err());
        assert!(gen_nws(6, 0, 0.1, 1).is_err());
        assert!(gen_nws(6, 2, 1.5, 1).is_err());
    }

    #[test]
    fn clustering_of_triangle_and_path() {
        let tri = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1), (2, 0, 1)]).unwrap();
        assert!((average_clustering(&tri) - 1.0).abs() < 1e-12);
        let path = Graph::from_edges(3, [(0, 1, 1), (1, 2, 1)]).unwrap();
        assert_eq!(average_clustering(&path), 0.0);
    }
}
