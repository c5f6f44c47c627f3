use nalgebra::DMatrix;

use crate::Execution;

/// Real square matrix in compressed sparse row form.
#[derive(Debug, Clone, PartialEq)]
pub struct SparseOperator {
    dim: usize,
    row_ptr: Vec<usize>,
    cols: Vec<usize>,
    values: Vec<f64>,
}

impl SparseOperator {
    /// Sorts the triplets, sums duplicates and drops exact zeros.
    pub fn from_triplets(dim: usize, mut triplets: Vec<(usize, usize, f64)>) -> Self {
        triplets.sort_by_key(|&(r, c, _)| (r, c));
        let mut row_ptr = vec![0usize; dim + 1];
        let mut cols = Vec::with_capacity(triplets.len());
        let mut values: Vec<f64> = Vec::with_capacity(triplets.len());
        let mut last: Option<(usize, usize)> = None;
        for (r, c, v) in triplets {
            assert!(r < dim && c < dim, "triplet ({r}, {c}) outside dimension {dim}");
            if last == Some((r, c)) {
                *values.last_mut().unwrap() += v;
                continue;
            }
            cols.push(c);
            values.push(v);
            row_ptr[r + 1] += 1;
            last = Some((r, c));
        }
        for i in 0..dim {
            row_ptr[i + 1] += row_ptr[i];
        }
        let op = Self { dim, row_ptr, cols, values };
        op.pruned()
    }

    fn pruned(self) -> Self {
        if self.values.iter().all(|&v| v != 0.0) {
            return self;
        }
        let triplets: Vec<_> = self.entries().filter(|&(_, _, v)| v != 0.0).collect();
        Self::from_triplets(self.dim, triplets)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn row_nnz(&self, row: usize) -> usize {
        self.row_ptr[row + 1] - self.row_ptr[row]
    }

    /// `(row, column, value)` in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        (0..self.dim)
            .flat_map(move |r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(move |k| (r, self.cols[k], self.values[k])))
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        let range = self.row_ptr[row]..self.row_ptr[row + 1];
        match self.cols[range.clone()].binary_search(&col) {
            Ok(k) => self.values[range.start + k],
            Err(_) => 0.0,
        }
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.get(i, i)).collect()
    }

    pub fn is_symmetric(&self, tol: f64) -> bool {
        self.entries().all(|(r, c, v)| (self.get(c, r) - v).abs() <= tol)
    }

    /// `y = A x`. Rows are independent, so the result does not depend on
    /// `exec`.
    pub fn apply_into(&self, x: &[f64], y: &mut [f64], exec: Execution) {
        assert_eq!(x.len(), self.dim);
        assert_eq!(y.len(), self.dim);
        exec.fill(y, |r| (self.row_ptr[r]..self.row_ptr[r + 1]).map(|k| self.values[k] * x[self.cols[k]]).sum());
    }

    pub fn apply(&self, x: &[f64], exec: Execution) -> Vec<f64> {
        let mut y = vec![0.0; self.dim];
        self.apply_into(x, &mut y, exec);
        y
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for (r, c, v) in self.entries() {
            m[(r, c)] = v;
        }
        m
    }

    /// `[A, D]` for a diagonal `D`: entries `A_rc (d_c - d_r)`.
    pub fn commutator_with_diagonal(&self, d: &[f64]) -> SparseOperator {
        let triplets = self.entries().map(|(r, c, v)| (r, c, v * (d[c] - d[r]))).collect();
        Self::from_triplets(self.dim, triplets)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csr_roundtrip_and_product() {
        let op = SparseOperator::from_triplets(
            3,
            vec![(2, 0, 1.0), (0, 0, 2.0), (0, 2, 1.0), (1, 1, 3.0), (1, 1, -1.0), (2, 2, 0.0)],
        );
        assert_eq!(op.nnz(), 4);
        assert_eq!(op.get(1, 1), 2.0);
        assert_eq!(op.get(2, 2), 0.0);
        assert!(op.is_symmetric(0.0));
        let y = op.apply(&[1.0, 2.0, 3.0], Execution::Sequential);
        assert_eq!(y, vec![5.0, 4.0, 1.0]);
        assert_eq!(op.to_dense() * nalgebra::DVector::from_vec(vec![1.0, 2.0, 3.0]), nalgebra::DVector::from_vec(y));
        assert_eq!(op.diagonal(), vec![2.0, 2.0, 0.0]);
    }

    #[test]
    fn asymmetric_detected() {
        let op = SparseOperator::from_triplets(2, vec![(0, 1, 1.0)]);
        assert!(!op.is_symmetric(1e-14));
        assert_eq!(op.commutator_with_diagonal(&[1.0, 1.0]).nnz(), 0);
        assert_eq!(op.commutator_with_diagonal(&[0.0, 2.0]).get(0, 1), 2.0);
    }
}
