//! Floyd–Warshall closures over [`DistanceMatrix`].

use serde::{Deserialize, Serialize};

use crate::graph::{saturating_add, Distance, DistanceMatrix};

use super::KernelError;

/// Counters reported by the in-place closures.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FwStats {
    pub pivots: usize,
    /// Entries strictly lowered, i.e. selective writes that fired.
    pub updates: u64,
}

fn check_square_zero_diagonal(d: &DistanceMatrix) -> Result<(), KernelError> {
    if !d.is_square() {
        return Err(KernelError::NotSquare {
            rows: d.rows(),
            cols: d.cols(),
        });
    }
    if let Some(i) = d.nonzero_diagonal() {
        return Err(KernelError::NonZeroDiagonal(i));
    }
    Ok(())
}

/// Textbook `k, i, j` triple loop with saturating addition.
pub fn fw_classic(d: &mut DistanceMatrix) -> Result<FwStats, KernelError> {
    check_square_zero_diagonal(d)?;
    let n = d.n();
    let mut updates = 0u64;
    let mut pivot_row = vec![Distance::INF; n];
    for k in 0..n {
        pivot_row.copy_from_slice(d.row(k));
        for i in 0..n {
            let dik = d[(i, k)];
            if dik.is_inf() {
                continue;
            }
            for (dij, &dkj) in d.row_mut(i).iter_mut().zip(&pivot_row) {
                let cand = saturating_add(dik, dkj);
                if cand < *dij {
                    *dij = cand;
                    updates += 1;
                }
            }
        }
    }
    Ok(FwStats { pivots: n, updates })
}

/// The pivot-separated view of a distance block at pivot `k`.
///
/// `panel_row[j]` holds `D[k][j']` and `panel_col[i]` holds `D[i'][k]`,
/// where `i'`, `j'` run over the non-pivot indices in ascending order, and
/// `main_block` is `D` with row and column `k` removed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PanelLayout {
    pub pivot: usize,
    pub pivot_value: Distance,
    pub panel_row: Vec<Distance>,
    pub panel_col: Vec<Distance>,
    pub main_block: DistanceMatrix,
}

impl PanelLayout {
    pub fn extract(d: &DistanceMatrix, pivot: usize) -> Result<Self, KernelError> {
        if !d.is_square() {
            return Err(KernelError::NotSquare {
                rows: d.rows(),
                cols: d.cols(),
            });
        }
        let n = d.n();
        if pivot >= n {
            return Err(KernelError::IndexOutOfRange { index: pivot, len: n });
        }
        let others: Vec<usize> = (0..n).filter(|&x| x != pivot).collect();
        let panel_row = others.iter().map(|&j| d[(pivot, j)]).collect();
        let panel_col = others.iter().map(|&i| d[(i, pivot)]).collect();
        let mut main = Vec::with_capacity((n - 1) * (n - 1));
        for &i in &others {
            main.extend(others.iter().map(|&j| d[(i, j)]));
        }
        Ok(PanelLayout {
            pivot,
            pivot_value: d[(pivot, pivot)],
            panel_row,
            panel_col,
            main_block: DistanceMatrix::from_vec(n - 1, n - 1, main)
                .expect("main block shape is (n-1)^2"),
        })
    }

    /// One add and one min over the whole main block.
    pub fn relax_main_block(&mut self) -> u64 {
        let mut updates = 0;
        for (i, &pc) in self.panel_col.iter().enumerate() {
            if pc.is_inf() {
                continue;
            }
            for (m, &pr) in self.main_block.row_mut(i).iter_mut().zip(&self.panel_row) {
                let cand = saturating_add(pc, pr);
                if cand < *m {
                    *m = cand;
                    updates += 1;
                }
            }
        }
        updates
    }

    pub fn recombine(&self) -> DistanceMatrix {
        let n = self.panel_row.len() + 1;
        let k = self.pivot;
        let mut d = DistanceMatrix::unreachable(n, n);
        let skip = |x: usize| if x < k { x } else { x + 1 };
        d[(k, k)] = self.pivot_value;
        for (j, &v) in self.panel_row.iter().enumerate() {
            d[(k, skip(j))] = v;
        }
        for (i, &v) in self.panel_col.iter().enumerate() {
            d[(skip(i), k)] = v;
        }
        for i in 0..n - 1 {
            for j in 0..n - 1 {
                d[(skip(i), skip(j))] = self.main_block[(i, j)];
            }
        }
        d
    }
}

/// A distance block held in the permuted physical layout of an FW tile:
/// physical row/column 0 is always the active pivot, so `Panel_Row` is the
/// rest of physical row 0, `Panel_Col` the rest of physical column 0, and
/// the main block everything else.
pub struct RemappedTile {
    buf: DistanceMatrix,
    /// `order[p]` is the logical index stored at physical position `p`.
    order: Vec<usize>,
    /// Inverse of `order`.
    position: Vec<usize>,
}

impl RemappedTile {
    pub fn load(d: &DistanceMatrix) -> Result<Self, KernelError> {
        check_square_zero_diagonal(d)?;
        let n = d.n();
        Ok(RemappedTile {
            buf: d.clone(),
            order: (0..n).collect(),
            position: (0..n).collect(),
        })
    }

    /// Permutation step: swaps the physical slot of logical `pivot` into
    /// position 0 (one row swap, one column swap).
    pub fn bring_to_front(&mut self, pivot: usize) {
        let p = self.position[pivot];
        if p == 0 {
            return;
        }
        let n = self.buf.n();
        let data = self.buf.as_mut_slice();
        for j in 0..n {
            data.swap(j, p * n + j);
        }
        for i in 0..n {
            data.swap(i * n, i * n + p);
        }
        let displaced = self.order[0];
        self.order.swap(0, p);
        self.position[pivot] = 0;
        self.position[displaced] = p;
    }

    /// Main-block update for the pivot currently at the front.
    pub fn relax_front(&mut self) -> u64 {
        let n = self.buf.n();
        let data = self.buf.as_mut_slice();
        let (panel_row, rest) = data.split_at_mut(n);
        let mut updates = 0;
        for row in rest.chunks_exact_mut(n) {
            let pc = row[0];
            if pc.is_inf() {
                continue;
            }
            for (m, &pr) in row[1..].iter_mut().zip(&panel_row[1..]) {
                let cand = saturating_add(pc, pr);
                if cand < *m {
                    *m = cand;
                    updates += 1;
                }
            }
        }
        updates
    }

    /// Panels and main block as seen by the tile right now.
    pub fn layout(&self) -> PanelLayout {
        let n = self.buf.n();
        PanelLayout {
            pivot: self.order[0],
            pivot_value: self.buf[(0, 0)],
            panel_row: self.buf.row(0)[1..].to_vec(),
            panel_col: (1..n).map(|i| self.buf[(i, 0)]).collect(),
            main_block: {
                let mut main = Vec::with_capacity((n - 1) * (n - 1));
                for i in 1..n {
                    main.extend_from_slice(&self.buf.row(i)[1..]);
                }
                DistanceMatrix::from_vec(n - 1, n - 1, main).expect("main block shape")
            },
        }
    }

    /// Writes the block back in logical order.
    pub fn unload(&self) -> DistanceMatrix {
        let n = self.buf.n();
        let mut out = DistanceMatrix::unreachable(n, n);
        for pi in 0..n {
            let li = self.order[pi];
            let src = self.buf.row(pi);
            let dst = out.row_mut(li);
            for pj in 0..n {
                dst[self.order[pj]] = src[pj];
            }
        }
        out
    }
}

/// Floyd–Warshall in the pivot-remapped schedule: per pivot, permute it to
/// the front, then update the whole main block with one add and one min.
///
/// The pivot row and column are never relaxed against themselves (the
/// diagonal is 0, so it would be a no-op); they pick up later pivots once
/// they are permuted back into the main block. Bit-identical to
/// [`fw_classic`], including the update count.
pub fn fw_remapped(d: &mut DistanceMatrix) -> Result<FwStats, KernelError> {
    let mut tile = RemappedTile::load(d)?;
    let n = d.n();
    let mut updates = 0;
    for k in 0..n {
        tile.bring_to_front(k);
        updates += tile.relax_front();
    }
    *d = tile.unload();
    Ok(FwStats { pivots: n, updates })
}

/// Three-phase blocked Floyd–Warshall with square blocks of side `block`:
/// close the diagonal block, then its row and column panels, then every
/// remaining block by a min-plus update.
pub fn fw_blocked(d: &mut DistanceMatrix, block: usize) -> Result<FwStats, KernelError> {
    check_square_zero_diagonal(d)?;
    if block == 0 {
        return Err(KernelError::Argument("block side must be positive".into()));
    }
    let n = d.n();
    let nb = n.div_ceil(block);
    let span = |b: usize| b * block..((b + 1) * block).min(n);
    let mut updates = 0u64;

    let mut relax = |d: &mut DistanceMatrix, ks: std::ops::Range<usize>, is: std::ops::Range<usize>, js: std::ops::Range<usize>| {
        for k in ks {
            for i in is.clone() {
                let dik = d[(i, k)];
                if dik.is_inf() {
                    continue;
                }
                for j in js.clone() {
                    let cand = saturating_add(dik, d[(k, j)]);
                    if cand < d[(i, j)] {
                        d[(i, j)] = cand;
                        updates += 1;
                    }
                }
            }
        }
    };

    for kb in 0..nb {
        relax(d, span(kb), span(kb), span(kb));
        for b in (0..nb).filter(|&b| b != kb) {
            relax(d, span(kb), span(kb), span(b));
            relax(d, span(kb), span(b), span(kb));
        }
        for ib in (0..nb).filter(|&b| b != kb) {
            for jb in (0..nb).filter(|&b| b != kb) {
                relax(d, span(kb), span(ib), span(jb));
            }
        }
    }
    Ok(FwStats { pivots: n, updates })
}
