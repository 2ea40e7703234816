use crate::graph::{saturating_add, Distance, DistanceMatrix};

use super::KernelError;

/// Tropical product: `c[i][j] = min_t a[i][t] + b[t][j]`.
pub fn min_plus_product(a: &DistanceMatrix, b: &DistanceMatrix) -> Result<DistanceMatrix, KernelError> {
    if a.cols() != b.rows() {
        return Err(KernelError::DimensionMismatch {
            left: (a.rows(), a.cols()),
            right: (b.rows(), b.cols()),
        });
    }
    let mut c = DistanceMatrix::unreachable(a.rows(), b.cols());
    for i in 0..a.rows() {
        let out = c.row_mut(i);
        for (t, &ait) in a.row(i).iter().enumerate() {
            if ait.is_inf() {
                continue;
            }
            for (cij, &btj) in out.iter_mut().zip(b.row(t)) {
                let cand = saturating_add(ait, btj);
                if cand < *cij {
                    *cij = cand;
                }
            }
        }
    }
    Ok(c)
}

fn check_indices(idx: &[usize], len: usize) -> Result<(), KernelError> {
    let mut seen = vec![false; len];
    for &x in idx {
        let slot = seen
            .get_mut(x)
            .ok_or(KernelError::IndexOutOfRange { index: x, len })?;
        if *slot {
            return Err(KernelError::DuplicateIndex(x));
        }
        *slot = true;
    }
    Ok(())
}

/// Submatrix `d[rows][cols]` in the given orders.
pub fn gather(d: &DistanceMatrix, rows: &[usize], cols: &[usize]) -> Result<DistanceMatrix, KernelError> {
    check_indices(rows, d.rows())?;
    check_indices(cols, d.cols())?;
    let mut data = Vec::with_capacity(rows.len() * cols.len());
    for &i in rows {
        let src = d.row(i);
        data.extend(cols.iter().map(|&j| src[j]));
    }
    Ok(DistanceMatrix::from_vec(rows.len(), cols.len(), data).expect("gathered shape"))
}

/// `d[idx][idx]`, in `idx` order.
pub fn restrict(d: &DistanceMatrix, idx: &[usize]) -> Result<DistanceMatrix, KernelError> {
    gather(d, idx, idx)
}

/// Min-overwrites `db[a][b]` into `d[idx[a]][idx[b]]` for every pair.
/// Returns how many entries were lowered.
pub fn inject(d: &mut DistanceMatrix, db: &DistanceMatrix, idx: &[usize]) -> Result<u64, KernelError> {
    if !db.is_square() || db.rows() != idx.len() {
        return Err(KernelError::DimensionMismatch {
            left: (db.rows(), db.cols()),
            right: (idx.len(), idx.len()),
        });
    }
    check_indices(idx, d.rows().min(d.cols()))?;
    let mut lowered = 0;
    for (a, &ia) in idx.iter().enumerate() {
        let src = db.row(a);
        let dst = d.row_mut(ia);
        for (b, &ib) in idx.iter().enumerate() {
            if src[b] < dst[ib] {
                dst[ib] = src[b];
                lowered += 1;
            }
        }
    }
    Ok(lowered)
}

/// Where a component's boundary vertices sit: `local[a]` in the component
/// matrix and `in_db[a]` in the boundary distance matrix.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BoundaryIndex {
    pub local: Vec<usize>,
    pub in_db: Vec<usize>,
}

impl BoundaryIndex {
    pub fn new(local: Vec<usize>, in_db: Vec<usize>) -> Result<Self, KernelError> {
        if local.len() != in_db.len() {
            return Err(KernelError::Argument(format!(
                "boundary index has {} local and {} db positions",
                local.len(),
                in_db.len()
            )));
        }
        Ok(BoundaryIndex { local, in_db })
    }

    pub fn len(&self) -> usize {
        self.local.len()
    }

    pub fn is_empty(&self) -> bool {
        self.local.is_empty()
    }

    fn validate(&self, component: &DistanceMatrix, db: &DistanceMatrix) -> Result<(), KernelError> {
        check_indices(&self.local, component.rows())?;
        if let Some(&bad) = self.in_db.iter().find(|&&x| x >= db.rows()) {
            return Err(KernelError::Consistency(format!(
                "boundary id {bad} missing from a {}-vertex boundary matrix",
                db.rows()
            )));
        }
        Ok(())
    }
}

/// Cross-component distances `out[m][n] = min_{i in b1, j in b2}
/// d1[m][i] + db[i][j] + d2[j][n]` for every `m` of component 1 and `n` of
/// component 2, as two chained min-plus products.
pub fn cross_merge(
    d1: &DistanceMatrix,
    db: &DistanceMatrix,
    d2: &DistanceMatrix,
    b1: &BoundaryIndex,
    b2: &BoundaryIndex,
) -> Result<DistanceMatrix, KernelError> {
    b1.validate(d1, db)?;
    b2.validate(d2, db)?;
    let all1: Vec<usize> = (0..d1.rows()).collect();
    let all2: Vec<usize> = (0..d2.cols()).collect();
    let source_to_boundary = gather(d1, &all1, &b1.local)?;
    let across = gather(db, &b1.in_db, &b2.in_db)?;
    let boundary_to_dest = gather(d2, &b2.local, &all2)?;
    let staged = min_plus_product(&source_to_boundary, &across)?;
    min_plus_product(&staged, &boundary_to_dest)
}

/// One entry of [`cross_merge`], without materializing the block.
pub fn cross_merge_entry(
    d1: &DistanceMatrix,
    db: &DistanceMatrix,
    d2: &DistanceMatrix,
    b1: &BoundaryIndex,
    b2: &BoundaryIndex,
    m: usize,
    n: usize,
) -> Result<Distance, KernelError> {
    b1.validate(d1, db)?;
    b2.validate(d2, db)?;
    if m >= d1.rows() {
        return Err(KernelError::IndexOutOfRange { index: m, len: d1.rows() });
    }
    if n >= d2.cols() {
        return Err(KernelError::IndexOutOfRange { index: n, len: d2.cols() });
    }
    let row = d1.row(m);
    let mut best = Distance::INF;
    for (&j_local, &j_db) in b2.local.iter().zip(&b2.in_db) {
        let tail = d2[(j_local, n)];
        if tail.is_inf() {
            continue;
        }
        let mut head = Distance::INF;
        for (&i_local, &i_db) in b1.local.iter().zip(&b1.in_db) {
            head = head.min(saturating_add(row[i_local], db[(i_db, j_db)]));
        }
        best = best.min(saturating_add(head, tail));
    }
    Ok(best)
}
