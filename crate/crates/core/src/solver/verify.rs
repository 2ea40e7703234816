use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::index::sample as sample_indices;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::graph::{saturating_add, Distance, Graph};

use super::recursive::ApspResult;
use super::SolveError;

/// Single-source shortest paths with a binary heap.
pub fn dijkstra(g: &Graph, source: usize) -> Vec<Distance> {
    let mut dist = vec![Distance::INF; g.n()];
    if source >= g.n() {
        return dist;
    }
    let mut heap = BinaryHeap::new();
    dist[source] = Distance::ZERO;
    heap.push(Reverse((0u32, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if d > dist[u].get() {
            continue;
        }
        for (v, w) in g.neighbors(u) {
            let cand = saturating_add(Distance(d), w);
            if cand < dist[v] {
                dist[v] = cand;
                heap.push(Reverse((cand.get(), v)));
            }
        }
    }
    dist
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub source: u32,
    pub target: u32,
    pub expected: Distance,
    pub found: Distance,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub sources: Vec<u32>,
    pub pairs_checked: u64,
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares the result against Dijkstra from `sample` seeded sources (every
/// vertex when `sample >= n`), over every target.
pub fn verify_against_oracle(g: &Graph, r: &ApspResult, sample: usize, seed: u64) -> Result<VerifyReport, SolveError> {
    if sample == 0 {
        return Err(SolveError::Argument("sample must be at least 1".into()));
    }
    if r.vertex_count() != g.n() {
        return Err(SolveError::Argument(format!(
            "result covers {} vertices, graph has {}",
            r.vertex_count(),
            g.n()
        )));
    }
    let n = g.n();
    let mut sources: Vec<u32> = if sample >= n {
        (0..n as u32).collect()
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        sample_indices(&mut rng, n, sample).into_iter().map(|v| v as u32).collect()
    };
    sources.sort_unstable();

    let mut report = VerifyReport::default();
    for &s in &sources {
        let expected = dijkstra(g, s as usize);
        let found = r.row(s as usize)?;
        report.pairs_checked += n as u64;
        for (t, (&e, &f)) in expected.iter().zip(&found).enumerate() {
            if e != f {
                report.mismatches.push(Mismatch {
                    source: s,
                    target: t as u32,
                    expected: e,
                    found: f,
                });
            }
        }
    }
    report.sources = sources;
    Ok(report)
}
