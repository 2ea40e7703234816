//! Reference implementations used as oracles. Deliberately naive and
//! independent of the library's kernels: plain `u64` arithmetic with an
//! explicit unreachable marker.

#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use pim_apsp::{Distance, DistanceMatrix, Graph};

pub const UNREACHABLE: u64 = u32::MAX as u64;

/// Tropical sum with the 32-bit sentinel as absorbing infinity.
pub fn tsum(a: u64, b: u64) -> u64 {
    if a >= UNREACHABLE || b >= UNREACHABLE {
        UNREACHABLE
    } else {
        (a + b).min(UNREACHABLE)
    }
}

pub fn arcs(g: &Graph) -> Vec<(usize, usize, u64)> {
    g.edges().map(|(u, v, w)| (u as usize, v as usize, w as u64)).collect()
}

/// Dijkstra from every source over adjacency lists rebuilt from the arcs.
pub fn dijkstra_all(n: usize, arcs: &[(usize, usize, u64)]) -> Vec<Vec<u64>> {
    let mut adj = vec![Vec::new(); n];
    for &(u, v, w) in arcs {
        adj[u].push((v, w));
    }
    (0..n)
        .map(|s| {
            let mut dist = vec![UNREACHABLE; n];
            dist[s] = 0;
            let mut heap = BinaryHeap::from([Reverse((0u64, s))]);
            while let Some(Reverse((d, u))) = heap.pop() {
                if d > dist[u] {
                    continue;
                }
                for &(v, w) in &adj[u] {
                    let c = tsum(d, w);
                    if c < dist[v] {
                        dist[v] = c;
                        heap.push(Reverse((c, v)));
                    }
                }
            }
            dist
        })
        .collect()
}

pub fn to_u64(d: &DistanceMatrix) -> Vec<Vec<u64>> {
    d.to_rows().into_iter().map(|r| r.into_iter().map(u64::from).collect()).collect()
}

pub fn from_u64(rows: &[Vec<u64>]) -> DistanceMatrix {
    let rows: Vec<Vec<u32>> = rows.iter().map(|r| r.iter().map(|&x| x as u32).collect()).collect();
    DistanceMatrix::from_rows(&rows).unwrap()
}

/// Textbook FW returning the closure and the count of strict improvements.
pub fn reference_fw(mut d: Vec<Vec<u64>>) -> (Vec<Vec<u64>>, u64) {
    let n = d.len();
    let mut updates = 0;
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                let c = tsum(d[i][k], d[k][j]);
                if c < d[i][j] {
                    d[i][j] = c;
                    updates += 1;
                }
            }
        }
    }
    (d, updates)
}

/// Dense weight matrix of `g` as plain integers.
pub fn weights(g: &Graph) -> Vec<Vec<u64>> {
    let n = g.n();
    let mut d = vec![vec![UNREACHABLE; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for (u, v, w) in arcs(g) {
        d[u][v] = d[u][v].min(w);
    }
    d
}

/// `min_{i in b1, j in b2} d1[m][i] + db[i][j] + d2[j][n]`, enumerated.
pub fn brute_cross(
    d1: &[Vec<u64>],
    db: &[Vec<u64>],
    d2: &[Vec<u64>],
    b1: &[(usize, usize)],
    b2: &[(usize, usize)],
) -> Vec<Vec<u64>> {
    let mut out = vec![vec![UNREACHABLE; d2[0].len()]; d1.len()];
    for (m, row) in out.iter_mut().enumerate() {
        for (n, cell) in row.iter_mut().enumerate() {
            for &(il, ig) in b1 {
                for &(jl, jg) in b2 {
                    *cell = (*cell).min(tsum(tsum(d1[m][il], db[ig][jg]), d2[jl][n]));
                }
            }
        }
    }
    out
}

/// Smallest number of crossing arcs over all bipartitions with part sizes
/// within `cap`.
pub fn brute_min_cut(n: usize, arcs: &[(usize, usize, u64)], cap: usize) -> usize {
    let mut best = usize::MAX;
    for mask in 0u32..(1 << n) {
        let ones = mask.count_ones() as usize;
        if ones > cap || n - ones > cap {
            continue;
        }
        let cut = arcs
            .iter()
            .filter(|&&(u, v, _)| (mask >> u) & 1 != (mask >> v) & 1)
            .count();
        best = best.min(cut);
    }
    best
}

/// Vertices of `part` touching another part, by a double loop over arcs.
pub fn brute_boundary(n: usize, arcs: &[(usize, usize, u64)], assignment: &[u32], part: u32) -> Vec<u32> {
    (0..n)
        .filter(|&v| {
            assignment[v] == part
                && arcs.iter().any(|&(a, b, _)| {
                    (a == v && assignment[b] != part) || (b == v && assignment[a] != part)
                })
        })
        .map(|v| v as u32)
        .collect()
}

pub fn dist(x: u64) -> Distance {
    Distance(x as u32)
}
