use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use super::{saturating_add, Distance, Graph, GraphError};

/// Row-major matrix over the tropical semiring.
///
/// Component and boundary distance blocks are square; the intermediate
/// panels of a min-plus merge are rectangular.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DistanceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Distance>,
}

impl DistanceMatrix {
    /// `rows x cols`, every entry INF.
    pub fn unreachable(rows: usize, cols: usize) -> Self {
        DistanceMatrix {
            rows,
            cols,
            data: vec![Distance::INF; rows * cols],
        }
    }

    /// Square tropical identity: 0 on the diagonal, INF elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::unreachable(n, n);
        for i in 0..n {
            m[(i, i)] = Distance::ZERO;
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<Distance>) -> Result<Self, GraphError> {
        if data.len() != rows * cols {
            return Err(GraphError::Shape {
                expected: rows * cols,
                found: data.len(),
            });
        }
        Ok(DistanceMatrix { rows, cols, data })
    }

    /// Builds from nested rows of raw values; `u32::MAX` is INF.
    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, GraphError> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(GraphError::Shape {
                    expected: c,
                    found: row.len(),
                });
            }
            data.extend(row.iter().copied().map(Distance));
        }
        Ok(DistanceMatrix { rows: r, cols: c, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Side length of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert!(self.is_square());
        self.rows
    }

    pub fn as_slice(&self) -> &[Distance] {
        &self.data
    }

    pub fn as_mut_slice(&mut self) -> &mut [Distance] {
        &mut self.data
    }

    pub fn row(&self, i: usize) -> &[Distance] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [Distance] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn finite_count(&self) -> usize {
        self.data.iter().filter(|d| d.is_finite()).count()
    }

    /// First diagonal index whose entry is not 0, if any.
    pub fn nonzero_diagonal(&self) -> Option<usize> {
        (0..self.rows.min(self.cols)).find(|&i| self[(i, i)] != Distance::ZERO)
    }

    /// Raw entry values; INF shows up as `u32::MAX`.
    pub fn to_rows(&self) -> Vec<Vec<u32>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|d| d.0).collect())
            .collect()
    }

    /// True when `d[i][j] <= d[i][k] + d[k][j]` holds for every triple.
    pub fn is_triangle_closed(&self) -> bool {
        let n = self.n();
        (0..n).all(|k| {
            (0..n).all(|i| {
                let dik = self[(i, k)];
                (0..n).all(|j| self[(i, j)] <= saturating_add(dik, self[(k, j)]))
            })
        })
    }
}

impl Index<(usize, usize)> for DistanceMatrix {
    type Output = Distance;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Distance {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for DistanceMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Distance {
        &mut self.data[i * self.cols + j]
    }
}

/// Expands `g` (or the subgraph on `subset`, in subset order) into a dense
/// matrix: edge weights, 0 on the diagonal, INF elsewhere.
pub fn csr_to_dense(g: &Graph, subset: Option<&[u32]>) -> Result<DistanceMatrix, GraphError> {
    match subset {
        None => {
            let mut d = DistanceMatrix::identity(g.n());
            for (u, v, w) in g.edges() {
                d[(u as usize, v as usize)] = Distance(w);
            }
            Ok(d)
        }
        Some(vertices) => {
            let sub = g.induced(vertices)?;
            csr_to_dense(&sub, None)
        }
    }
}

/// Compresses the finite off-diagonal entries of a square matrix into CSR.
pub fn dense_to_csr(d: &DistanceMatrix) -> Graph {
    let n = d.n();
    let mut arcs = Vec::new();
    for i in 0..n {
        for (j, w) in d.row(i).iter().enumerate() {
            if i != j && w.is_finite() {
                arcs.push((i as u32, j as u32, w.0));
            }
        }
    }
    Graph::from_checked_arcs(n, arcs)
}
