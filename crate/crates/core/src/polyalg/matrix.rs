use std::fmt;

use crate::{Error, Result};

/// Dense row-major `n x n` matrix of `f64`.
///
/// Deliberately minimal: the pipeline only needs small matrices (covariances
/// and certificates, `n` in the single digits), so a `Vec<f64>` with explicit
/// loops beats pulling in a linear-algebra dependency and keeps every
/// operation's evaluation order — and hence bit-level determinism — obvious.
#[derive(Debug, Clone, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    data: Vec<f64>,
}

impl SquareMatrix {
    /// Zero matrix of size `n`.
    pub fn zeros(n: usize) -> Self {
        SquareMatrix {
            n,
            data: vec![0.0; n * n],
        }
    }

    /// Identity matrix of size `n`.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1.0);
        }
        m
    }

    /// Builds a matrix from rows; every row must have length `rows.len()`.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        let mut m = Self::zeros(n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidInput(format!(
                    "row {} has length {}, expected {}",
                    i,
                    row.len(),
                    n
                )));
            }
            for (j, &v) in row.iter().enumerate() {
                m.set(i, j, v);
            }
        }
        Ok(m)
    }

    /// Diagonal matrix with the given entries.
    pub fn from_diagonal(diag: &[f64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (i, &v) in diag.iter().enumerate() {
            m.set(i, i, v);
        }
        m
    }

    /// Size `n` of the matrix.
    pub fn size(&self) -> usize {
        self.n
    }

    /// Entry at row `i`, column `j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.n + j]
    }

    /// Sets the entry at row `i`, column `j`.
    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] = v;
    }

    /// Adds `v` to the entry at row `i`, column `j`.
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.n + j] += v;
    }

    /// Row `i` as a slice.
    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    /// Column `j` as an owned vector.
    pub fn column(&self, j: usize) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    /// Rows as owned vectors, convenient for serialization.
    pub fn to_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    /// Main diagonal as an owned vector.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.n).map(|i| self.get(i, i)).collect()
    }

    /// Transposed copy.
    pub fn transpose(&self) -> SquareMatrix {
        let mut t = Self::zeros(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn matmul(&self, other: &SquareMatrix) -> SquareMatrix {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        let n = self.n;
        let mut out = Self::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in 0..n {
                    out.add_to(i, j, a * other.get(k, j));
                }
            }
        }
        out
    }

    /// Matrix-vector product `self * v`.
    pub fn mul_vec(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.n, v.len(), "vector length differs from matrix size");
        (0..self.n)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Scales column `j` by `s` in place.
    pub fn scale_column(&mut self, j: usize, s: f64) {
        for i in 0..self.n {
            let v = self.get(i, j);
            self.set(i, j, v * s);
        }
    }

    /// Leading `k x k` principal submatrix.
    pub fn leading_block(&self, k: usize) -> SquareMatrix {
        assert!(k <= self.n);
        let mut b = Self::zeros(k);
        for i in 0..k {
            for j in 0..k {
                b.set(i, j, self.get(i, j));
            }
        }
        b
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, &v| m.max(v.abs()))
    }

    /// Frobenius norm.
    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Largest absolute asymmetry `max |a_ij - a_ji|`.
    pub fn max_asymmetry(&self) -> f64 {
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                worst = worst.max((self.get(i, j) - self.get(j, i)).abs());
            }
        }
        worst
    }

    /// Orthogonality defect `max |self^T self - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let gram = self.transpose().matmul(self);
        let mut worst = 0.0f64;
        for i in 0..self.n {
            for j in 0..self.n {
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((gram.get(i, j) - target).abs());
            }
        }
        worst
    }

    /// Largest absolute entry of `self - other`.
    pub fn max_abs_diff(&self, other: &SquareMatrix) -> f64 {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        self.data
            .iter()
            .zip(&other.data)
            .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()))
    }

    /// Solves `self * X = rhs` by Gaussian elimination with partial pivoting.
    pub fn solve_matrix(&self, rhs: &SquareMatrix) -> Result<SquareMatrix> {
        if self.n != rhs.n {
            return Err(Error::InvalidInput(format!(
                "cannot solve: matrix size {} vs right-hand side {}",
                self.n, rhs.n
            )));
        }
        let n = self.n;
        let mut a = self.clone();
        let mut x = rhs.clone();
        for col in 0..n {
            let (pivot_row, pivot_abs) = (col..n)
                .map(|r| (r, a.get(r, col).abs()))
                .fold((col, 0.0), |best, cur| if cur.1 > best.1 { cur } else { best });
            if pivot_abs == 0.0 {
                return Err(Error::Numerical(format!(
                    "singular matrix in linear solve (pivot column {})",
                    col
                )));
            }
            if pivot_row != col {
                for j in 0..n {
                    let (u, v) = (a.get(col, j), a.get(pivot_row, j));
                    a.set(col, j, v);
                    a.set(pivot_row, j, u);
                    let (u, v) = (x.get(col, j), x.get(pivot_row, j));
                    x.set(col, j, v);
                    x.set(pivot_row, j, u);
                }
            }
            let pivot = a.get(col, col);
            for r in (col + 1)..n {
                let factor = a.get(r, col) / pivot;
                if factor == 0.0 {
                    continue;
                }
                for j in col..n {
                    let v = a.get(r, j) - factor * a.get(col, j);
                    a.set(r, j, v);
                }
                for j in 0..n {
                    let v = x.get(r, j) - factor * x.get(col, j);
                    x.set(r, j, v);
                }
            }
        }
        for col in (0..n).rev() {
            let pivot = a.get(col, col);
            for j in 0..n {
                let mut v = x.get(col, j);
                for k in (col + 1)..n {
                    v -= a.get(col, k) * x.get(k, j);
                }
                x.set(col, j, v / pivot);
            }
        }
        Ok(x)
    }
}

impl fmt::Display for SquareMatrix {
    /// One bracketed row per line, entries in fixed-width notation.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            write!(f, "[")?;
            for j in 0..self.n {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>12.6}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matmul_identity_is_noop() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        assert_eq!(m.matmul(&SquareMatrix::identity(2)), m);
        assert_eq!(SquareMatrix::identity(2).matmul(&m), m);
    }

    #[test]
    fn transpose_swaps_entries() {
        let m = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
        let t = m.transpose();
        assert_eq!(t.get(0, 1), 3.0);
        assert_eq!(t.get(1, 0), 2.0);
    }

    #[test]
    fn solve_matrix_inverts_simple_system() {
        // A = [[2, 1], [1, 3]], X = [[1, 0], [0, 1]] recovers A^{-1}; check A * X = I.
        let a = SquareMatrix::from_rows(&[vec![2.0, 1.0], vec![1.0, 3.0]]).unwrap();
        let inv = a.solve_matrix(&SquareMatrix::identity(2)).unwrap();
        assert!(a.matmul(&inv).max_abs_diff(&SquareMatrix::identity(2)) < 1e-14);
    }

    #[test]
    fn solve_matrix_rejects_singular() {
        let a = SquareMatrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap();
        assert!(a.solve_matrix(&SquareMatrix::identity(2)).is_err());
    }

    #[test]
    fn orthogonality_defect_of_rotation_is_tiny() {
        let (c, s) = (0.6, 0.8);
        let r = SquareMatrix::from_rows(&[vec![c, -s], vec![s, c]]).unwrap();
        assert!(r.orthogonality_defect() < 1e-15);
    }

    #[test]
    fn leading_block_extracts_corner() {
        let m = SquareMatrix::from_rows(&[
            vec![1.0, 2.0, 3.0],
            vec![4.0, 5.0, 6.0],
            vec![7.0, 8.0, 9.0],
        ])
        .unwrap();
        let b = m.leading_block(2);
        assert_eq!(b.to_rows(), vec![vec![1.0, 2.0], vec![4.0, 5.0]]);
    }
}
