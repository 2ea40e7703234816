//! Multilevel k-way partitioning by recursive bisection.
//!
//! Each bisection coarsens the graph by heavy-edge matching, grows an
//! initial split greedily from several start vertices, and refines with
//! boundary Fiduccia–Mattheyses while projecting back to the finest level.
//! Arcs are treated as undirected; the edge weight of a vertex pair is the
//! number of arcs joining it (1 or 2). Vertex weights start at 1.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::Graph;

use super::PartitionError;

const COARSEN_TO: usize = 40;
const INITIAL_TRIES: usize = 10;
const FM_PASSES: usize = 10;
const FM_STALL_MOVES: usize = 64;

/// Splits `g` into `k` parts with every part at most
/// `imbalance * ceil(n / k)` vertices, heuristically minimizing edge cut.
/// Deterministic for a given input.
pub fn partition_kway(g: &Graph, k: usize, imbalance: f64) -> Result<Vec<u32>, PartitionError> {
    let n = g.n();
    if k == 0 || k > n.max(1) {
        return Err(PartitionError::Argument(format!(
            "cannot split {n} vertices into {k} parts"
        )));
    }
    if imbalance.is_nan() || imbalance < 1.0 {
        return Err(PartitionError::Argument(format!(
            "imbalance must be at least 1.0, got {imbalance}"
        )));
    }
    if k == 1 || n == 0 {
        return Ok(vec![0; n]);
    }
    let cap = part_cap(n, k, imbalance);
    let pairs = g.edges().map(|(u, v, _)| (u, v, 1)).collect();
    Ok(split_work_graph(&WorkGraph::from_pairs(vec![1; n], pairs), k, cap as u64))
}

/// Partitions a vertex-weighted graph given as weighted undirected pairs
/// into `k` parts of total weight at most `cap` each (best effort when the
/// weights do not pack).
pub(crate) fn partition_weighted(
    vertex_weights: Vec<u32>,
    pairs: Vec<(u32, u32, u32)>,
    k: usize,
    cap: u64,
) -> Vec<u32> {
    let n = vertex_weights.len();
    if k <= 1 || n <= 1 {
        return vec![0; n];
    }
    split_work_graph(&WorkGraph::from_pairs(vertex_weights, pairs), k.min(n), cap)
}

fn split_work_graph(wg: &WorkGraph, k: usize, cap: u64) -> Vec<u32> {
    let mut parts = vec![0u32; wg.n()];
    let ids: Vec<u32> = (0..wg.n() as u32).collect();
    split_recursive(wg, &ids, k, cap, 0, &mut parts);
    parts
}

/// Largest permitted part size.
pub fn part_cap(n: usize, k: usize, imbalance: f64) -> usize {
    let even = n.div_ceil(k);
    ((imbalance * even as f64).floor() as usize).max(even)
}

/// Number of arcs whose endpoints lie in different parts.
pub fn edge_cut(g: &Graph, parts: &[u32]) -> u64 {
    g.edges()
        .filter(|&(u, v, _)| parts[u as usize] != parts[v as usize])
        .count() as u64
}

fn split_recursive(wg: &WorkGraph, ids: &[u32], k: usize, cap: u64, first: u32, out: &mut [u32]) {
    if k == 1 {
        for &v in ids {
            out[v as usize] = first;
        }
        return;
    }
    let k_left = k / 2;
    let k_right = k - k_left;
    let total = wg.total_weight();
    let target = (total as u128 * k_left as u128 / k as u128) as u64;
    let caps = [k_left as u64 * cap, k_right as u64 * cap];
    let side = bisect(wg, target, caps);

    for (s, k_side, offset) in [(0u8, k_left, first), (1u8, k_right, first + k_left as u32)] {
        let members: Vec<u32> = (0..wg.n()).filter(|&v| side[v] == s).map(|v| v as u32).collect();
        let sub = wg.induced(&members);
        let sub_ids: Vec<u32> = members.iter().map(|&v| ids[v as usize]).collect();
        split_recursive(&sub, &sub_ids, k_side, cap, offset, out);
    }
}

/// Undirected weighted graph in adjacency-array form.
#[derive(Clone, Debug)]
struct WorkGraph {
    xadj: Vec<usize>,
    adj: Vec<u32>,
    ewgt: Vec<u32>,
    vwgt: Vec<u32>,
}

impl WorkGraph {
    /// Symmetrizes weighted pairs, summing parallel weights and dropping
    /// self-pairs.
    fn from_pairs(vwgt: Vec<u32>, pairs: Vec<(u32, u32, u32)>) -> Self {
        let n = vwgt.len();
        let mut both: Vec<(u32, u32, u32)> = Vec::with_capacity(2 * pairs.len());
        for (u, v, w) in pairs {
            if u != v {
                both.push((u, v, w));
                both.push((v, u, w));
            }
        }
        both.sort_unstable_by_key(|&(u, v, _)| (u, v));
        let mut xadj = vec![0usize; n + 1];
        let mut adj = Vec::with_capacity(both.len());
        let mut ewgt: Vec<u32> = Vec::with_capacity(both.len());
        let mut i = 0;
        while i < both.len() {
            let (u, v, _) = both[i];
            let mut w = 0u32;
            while i < both.len() && (both[i].0, both[i].1) == (u, v) {
                w += both[i].2;
                i += 1;
            }
            adj.push(v);
            ewgt.push(w);
            xadj[u as usize + 1] += 1;
        }
        for u in 0..n {
            xadj[u + 1] += xadj[u];
        }
        WorkGraph { xadj, adj, ewgt, vwgt }
    }

    fn n(&self) -> usize {
        self.vwgt.len()
    }

    fn total_weight(&self) -> u64 {
        self.vwgt.iter().map(|&w| w as u64).sum()
    }

    fn neighbors(&self, u: usize) -> impl Iterator<Item = (usize, u64)> + '_ {
        (self.xadj[u]..self.xadj[u + 1]).map(move |e| (self.adj[e] as usize, self.ewgt[e] as u64))
    }

    fn induced(&self, members: &[u32]) -> WorkGraph {
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in members.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut xadj = Vec::with_capacity(members.len() + 1);
        xadj.push(0);
        let mut adj = Vec::new();
        let mut ewgt = Vec::new();
        for &v in members {
            for (u, w) in self.neighbors(v as usize) {
                if local[u] != u32::MAX {
                    adj.push(local[u]);
                    ewgt.push(w as u32);
                }
            }
            xadj.push(adj.len());
        }
        WorkGraph {
            xadj,
            adj,
            ewgt,
            vwgt: members.iter().map(|&v| self.vwgt[v as usize]).collect(),
        }
    }

    /// Heavy-edge matching. Returns the coarse graph and the fine-to-coarse
    /// map, or `None` when matching no longer shrinks the graph.
    fn coarsen(&self, max_vertex_weight: u32) -> Option<(WorkGraph, Vec<u32>)> {
        let n = self.n();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| (self.xadj[v + 1] - self.xadj[v], v));

        let mut mate = vec![u32::MAX; n];
        for &v in &order {
            if mate[v] != u32::MAX {
                continue;
            }
            let mut best: Option<(u64, usize)> = None;
            for (u, w) in self.neighbors(v) {
                if u == v || mate[u] != u32::MAX || self.vwgt[u] + self.vwgt[v] > max_vertex_weight {
                    continue;
                }
                let better = match best {
                    None => true,
                    Some((bw, bu)) => w > bw || (w == bw && u < bu),
                };
                if better {
                    best = Some((w, u));
                }
            }
            match best {
                Some((_, u)) => {
                    mate[v] = u as u32;
                    mate[u] = v as u32;
                }
                None => mate[v] = v as u32,
            }
        }

        let mut cmap = vec![u32::MAX; n];
        let mut coarse_n = 0u32;
        for v in 0..n {
            if cmap[v] == u32::MAX {
                cmap[v] = coarse_n;
                cmap[mate[v] as usize] = coarse_n;
                coarse_n += 1;
            }
        }
        let coarse_n = coarse_n as usize;
        if coarse_n as f64 > 0.95 * n as f64 {
            return None;
        }

        let mut vwgt = vec![0u32; coarse_n];
        let mut members: Vec<[u32; 2]> = vec![[u32::MAX; 2]; coarse_n];
        for v in 0..n {
            let c = cmap[v] as usize;
            vwgt[c] += self.vwgt[v];
            if members[c][0] == u32::MAX {
                members[c][0] = v as u32;
            } else {
                members[c][1] = v as u32;
            }
        }

        let mut xadj = Vec::with_capacity(coarse_n + 1);
        xadj.push(0);
        let mut adj = Vec::new();
        let mut ewgt: Vec<u32> = Vec::new();
        let mut slot = vec![usize::MAX; coarse_n];
        for (c, pair) in members.iter().enumerate() {
            let row_start = adj.len();
            for &v in pair.iter().filter(|&&v| v != u32::MAX) {
                for (u, w) in self.neighbors(v as usize) {
                    let cu = cmap[u] as usize;
                    if cu == c {
                        continue;
                    }
                    if slot[cu] == usize::MAX || slot[cu] < row_start {
                        slot[cu] = adj.len();
                        adj.push(cu as u32);
                        ewgt.push(w as u32);
                    } else {
                        ewgt[slot[cu]] += w as u32;
                    }
                }
            }
            xadj.push(adj.len());
        }
        Some((WorkGraph { xadj, adj, ewgt, vwgt }, cmap))
    }
}

/// Two-way split state with incremental cut and side weights.
#[derive(Clone)]
struct Bisection {
    side: Vec<u8>,
    weight: [u64; 2],
    cut: u64,
}

impl Bisection {
    fn new(wg: &WorkGraph, side: Vec<u8>) -> Self {
        let mut weight = [0u64; 2];
        for v in 0..wg.n() {
            weight[side[v] as usize] += wg.vwgt[v] as u64;
        }
        let mut cut = 0;
        for v in 0..wg.n() {
            for (u, w) in wg.neighbors(v) {
                if side[u] != side[v] {
                    cut += w;
                }
            }
        }
        Bisection {
            side,
            weight,
            cut: cut / 2,
        }
    }

    fn violation(&self, caps: [u64; 2]) -> u64 {
        self.weight[0].saturating_sub(caps[0]) + self.weight[1].saturating_sub(caps[1])
    }

    /// Lexicographic quality: overweight first, then cut, then distance
    /// from the target left weight.
    fn score(&self, caps: [u64; 2], target: u64) -> (u64, u64, u64) {
        (self.violation(caps), self.cut, self.weight[0].abs_diff(target))
    }

    fn gain(&self, wg: &WorkGraph, v: usize) -> i64 {
        let mut ext = 0i64;
        let mut int = 0i64;
        for (u, w) in wg.neighbors(v) {
            if self.side[u] == self.side[v] {
                int += w as i64;
            } else {
                ext += w as i64;
            }
        }
        ext - int
    }

    fn is_boundary(&self, wg: &WorkGraph, v: usize) -> bool {
        wg.neighbors(v).any(|(u, _)| self.side[u] != self.side[v])
    }

    fn apply_move(&mut self, wg: &WorkGraph, v: usize) {
        let g = self.gain(wg, v);
        let from = self.side[v] as usize;
        self.side[v] ^= 1;
        self.weight[from] -= wg.vwgt[v] as u64;
        self.weight[1 - from] += wg.vwgt[v] as u64;
        self.cut = (self.cut as i64 - g) as u64;
    }
}

fn bisect(wg: &WorkGraph, target: u64, caps: [u64; 2]) -> Vec<u8> {
    let total = wg.total_weight();
    let max_vw = ((total / COARSEN_TO as u64).max(2)).min(u32::MAX as u64) as u32;

    let mut stack: Vec<(WorkGraph, Vec<u32>)> = Vec::new();
    let mut current = wg.clone();
    while current.n() > COARSEN_TO {
        match current.coarsen(max_vw) {
            Some((coarse, cmap)) => {
                let fine = std::mem::replace(&mut current, coarse);
                stack.push((fine, cmap));
            }
            None => break,
        }
    }

    let mut part = initial_bisection(&current, target, caps);
    while let Some((fine, cmap)) = stack.pop() {
        let side = cmap.iter().map(|&c| part.side[c as usize]).collect();
        current = fine;
        part = Bisection::new(&current, side);
        rebalance(&current, &mut part, caps);
        fm_refine(&current, &mut part, caps, target);
    }
    part.side
}

fn initial_bisection(wg: &WorkGraph, target: u64, caps: [u64; 2]) -> Bisection {
    let n = wg.n();
    let tries = n.clamp(1, INITIAL_TRIES);
    let mut best: Option<Bisection> = None;
    for t in 0..tries {
        let start = t * n / tries;
        let mut part = grow_region(wg, start, target, caps);
        rebalance(wg, &mut part, caps);
        fm_refine(wg, &mut part, caps, target);
        let better = match &best {
            None => true,
            Some(b) => part.score(caps, target) < b.score(caps, target),
        };
        if better {
            best = Some(part);
        }
    }
    best.unwrap_or_else(|| Bisection::new(wg, vec![1; n]))
}

/// Greedy graph growing: side 0 starts as `{start}` and absorbs the
/// frontier vertex with the best gain until it reaches `target`.
fn grow_region(wg: &WorkGraph, start: usize, target: u64, caps: [u64; 2]) -> Bisection {
    let n = wg.n();
    let mut side = vec![1u8; n];
    if n == 0 {
        return Bisection::new(wg, side);
    }
    let mut conn = vec![0i64; n];
    let mut degree = vec![0i64; n];
    for v in 0..n {
        degree[v] = wg.neighbors(v).map(|(_, w)| w as i64).sum();
    }
    let mut heap: BinaryHeap<(i64, Reverse<usize>)> = BinaryHeap::new();
    let mut weight = 0u64;
    let mut next_unvisited = 0usize;
    let mut pending = Some(start);

    while weight < target {
        let v = match pending.take() {
            Some(v) => v,
            None => {
                let mut picked = None;
                while let Some((g, Reverse(u))) = heap.pop() {
                    if side[u] == 1 && g == 2 * conn[u] - degree[u] {
                        picked = Some(u);
                        break;
                    }
                }
                match picked {
                    Some(u) => u,
                    None => {
                        while next_unvisited < n && side[next_unvisited] != 1 {
                            next_unvisited += 1;
                        }
                        if next_unvisited == n {
                            break;
                        }
                        next_unvisited
                    }
                }
            }
        };
        let vw = wg.vwgt[v] as u64;
        if weight + vw > caps[0] {
            // Too heavy to absorb; try the next candidate instead.
            if weight > 0 && heap.is_empty() {
                break;
            }
            side[v] = 2;
            continue;
        }
        side[v] = 0;
        weight += vw;
        for (u, w) in wg.neighbors(v) {
            if side[u] == 1 {
                conn[u] += w as i64;
                heap.push((2 * conn[u] - degree[u], Reverse(u)));
            }
        }
    }
    for s in &mut side {
        if *s == 2 {
            *s = 1;
        }
    }
    Bisection::new(wg, side)
}

/// Moves best-gain vertices off an overweight side until both sides fit.
fn rebalance(wg: &WorkGraph, part: &mut Bisection, caps: [u64; 2]) {
    for _ in 0..wg.n() {
        let over = if part.weight[0] > caps[0] {
            0
        } else if part.weight[1] > caps[1] {
            1
        } else {
            return;
        };
        let dest = 1 - over;
        let room = caps[dest].saturating_sub(part.weight[dest]);
        let candidate = (0..wg.n())
            .filter(|&v| part.side[v] as usize == over && (wg.vwgt[v] as u64) <= room.max(1))
            .max_by_key(|&v| (part.gain(wg, v), Reverse(v)));
        match candidate {
            Some(v) => part.apply_move(wg, v),
            None => return,
        }
    }
}

/// Boundary Fiduccia–Mattheyses with rollback to the best prefix of each
/// pass. A move may overshoot the destination cap by one vertex weight
/// while in flight; only states that score better are kept.
fn fm_refine(wg: &WorkGraph, part: &mut Bisection, caps: [u64; 2], target: u64) {
    let n = wg.n();
    if n < 2 {
        return;
    }
    let max_vw = wg.vwgt.iter().copied().max().unwrap_or(1) as u64;
    for _ in 0..FM_PASSES {
        let start_score = part.score(caps, target);
        let mut locked = vec![false; n];
        let mut heap: BinaryHeap<(i64, Reverse<usize>)> = BinaryHeap::new();
        let mut gain = vec![0i64; n];
        for v in 0..n {
            if part.is_boundary(wg, v) {
                gain[v] = part.gain(wg, v);
                heap.push((gain[v], Reverse(v)));
            }
        }
        let mut moves: Vec<usize> = Vec::new();
        let mut best_score = start_score;
        let mut best_len = 0usize;
        let mut since_best = 0usize;

        while let Some((g, Reverse(v))) = heap.pop() {
            if locked[v] || g != gain[v] {
                continue;
            }
            let dest = 1 - part.side[v] as usize;
            if part.weight[dest] + wg.vwgt[v] as u64 > caps[dest] + max_vw {
                continue;
            }
            part.apply_move(wg, v);
            locked[v] = true;
            moves.push(v);
            for (u, _) in wg.neighbors(v) {
                if !locked[u] {
                    gain[u] = part.gain(wg, u);
                    heap.push((gain[u], Reverse(u)));
                }
            }
            let score = part.score(caps, target);
            if score < best_score {
                best_score = score;
                best_len = moves.len();
                since_best = 0;
            } else {
                since_best += 1;
                if since_best >= FM_STALL_MOVES {
                    break;
                }
            }
        }
        for &v in moves[best_len..].iter().rev() {
            part.apply_move(wg, v);
        }
        if best_score >= start_score {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn symmetric(n: usize, pairs: &[(u32, u32)]) -> Graph {
        Graph::from_edges(n, pairs.iter().flat_map(|&(u, v)| [(u, v, 1), (v, u, 1)])).unwrap()
    }

    #[test]
    fn path_splits_in_the_middle() {
        let g = symmetric(4, &[(0, 1), (1, 2), (2, 3)]);
        let p = partition_kway(&g, 2, 1.0).unwrap();
        assert_eq!(p[0], p[1]);
        assert_eq!(p[2], p[3]);
        assert_ne!(p[0], p[2]);
    }

    #[test]
    fn single_part() {
        let g = symmetric(5, &[(0, 1), (3, 4)]);
        assert_eq!(partition_kway(&g, 1, 1.0).unwrap(), vec![0; 5]);
    }

    #[test]
    fn rejects_bad_arguments() {
        let g = symmetric(3, &[(0, 1)]);
        assert!(partition_kway(&g, 4, 1.0).is_err());
        assert!(partition_kway(&g, 0, 1.0).is_err());
        assert!(partition_kway(&g, 2, 0.5).is_err());
    }

    #[test]
    fn respects_cap_on_disconnected_input() {
        let g = Graph::empty(37);
        let p = partition_kway(&g, 5, 1.0).unwrap();
        let cap = part_cap(37, 5, 1.0);
        for part in 0..5 {
            assert!(p.iter().filter(|&&x| x == part).count() <= cap);
        }
    }

    #[test]
    fn two_cliques_found() {
        let mut pairs = Vec::new();
        for base in [0u32, 6] {
            for a in 0..6 {
                for b in a + 1..6 {
                    pairs.push((base + a, base + b));
                }
            }
        }
        pairs.push((5, 6));
        let g = symmetric(12, &pairs);
        let p = partition_kway(&g, 2, 1.0).unwrap();
        assert_eq!(edge_cut(&g, &p), 2);
    }

    #[test]
    fn deterministic() {
        let g = crate::graph::gen_er(300, 6.0, 9).unwrap();
        assert_eq!(partition_kway(&g, 7, 1.03).unwrap(), partition_kway(&g, 7, 1.03).unwrap());
    }
}
