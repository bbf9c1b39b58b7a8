//! Dense symmetric matrices with small non-negative integer entries.
//!
//! Distance matrices, eccentricity matrices and their principal submatrices
//! all live in [`IntSymMatrix`]. Storage is row-major; the constructor checks
//! symmetry and the zero diagonal once so every consumer can rely on both.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("entry count {got} does not match dimension {n}x{n}")]
    DimensionMismatch { n: usize, got: usize },
    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },
    #[error("diagonal entry {index} is nonzero")]
    NonZeroDiagonal { index: usize },
    #[error("index {index} out of range for dimension {n}")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("index {index} selected more than once")]
    DuplicateIndex { index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntSymMatrix {
    n: usize,
    entries: Vec<u32>,
}

impl IntSymMatrix {
    pub fn new(n: usize, entries: Vec<u32>) -> Result<Self, MatrixError> {
        if entries.len() != n * n {
            return Err(MatrixError::DimensionMismatch { n, got: entries.len() });
        }
        for i in 0..n {
            if entries[i * n + i] != 0 {
                return Err(MatrixError::NonZeroDiagonal { index: i });
            }
            for j in (i + 1)..n {
                if entries[i * n + j] != entries[j * n + i] {
                    return Err(MatrixError::NotSymmetric { row: i, col: j });
                }
            }
        }
        Ok(Self { n, entries })
    }

    /// Builds a matrix from the strict upper triangle; `f(i, j)` is called with `i < j`.
    pub fn from_upper<F>(n: usize, mut f: F) -> Self
    where
        F: FnMut(usize, usize) -> u32,
    {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let x = f(i, j);
                entries[i * n + j] = x;
                entries[j * n + i] = x;
            }
        }
        Self { n, entries }
    }

    pub fn zeros(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> u32 {
        self.entries[row * self.n + col]
    }

    pub fn row(&self, row: usize) -> &[u32] {
        &self.entries[row * self.n..(row + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u32]> {
        // chunks_exact panics on a zero chunk size
        self.entries.chunks_exact(self.n.max(1)).take(self.n)
    }

    pub fn max_entry(&self) -> u32 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Sum of squared entries; equals the sum of squared eigenvalues.
    pub fn frobenius_sq(&self) -> u64 {
        self.entries.iter().map(|&x| u64::from(x) * u64::from(x)).sum()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|&x| f64::from(x)).collect()
    }

    /// Restriction of the matrix to the rows and columns in `idx`, in that order.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Result<Self, MatrixError> {
        let mut seen = vec![false; self.n];
        for &i in idx {
            if i >= self.n {
                return Err(MatrixError::IndexOutOfRange { index: i, n: self.n });
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(MatrixError::DuplicateIndex { index: i });
            }
        }
        let k = idx.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in idx {
            entries.extend(idx.iter().map(|&j| self.get(i, j)));
        }
        Ok(Self { n: k, entries })
    }

    /// True when the graph of nonzero off-diagonal entries is connected.
    pub fn is_irreducible(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for (v, &x) in self.row(u).iter().enumerate() {
                if x != 0 && !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Display for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let width = self.max_entry().to_string().len();
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|x| format!("{x:>width$}")).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b4() -> IntSymMatrix {
        IntSymMatrix::new(4, vec![0, 0, 3, 4, 0, 0, 0, 3, 3, 0, 0, 0, 4, 3, 0, 0]).unwrap()
    }

    #[test]
    fn rejects_asymmetric_and_diagonal() {
        assert_eq!(IntSymMatrix::new(2, vec![0, 1, 2, 0]), Err(MatrixError::NotSymmetric { row: 0, col: 1 }));
        assert_eq!(IntSymMatrix::new(2, vec![1, 0, 0, 0]), Err(MatrixError::NonZeroDiagonal { index: 0 }));
        assert!(matches!(IntSymMatrix::new(2, vec![0, 1, 1]), Err(MatrixError::DimensionMismatch { .. })));
    }

    #[test]
    fn submatrix_identity_and_singleton() {
        let m = b4();
        assert_eq!(m.principal_submatrix(&[0, 1, 2, 3]).unwrap(), m);
        let one = m.principal_submatrix(&[2]).unwrap();
        assert_eq!(one, IntSymMatrix::zeros(1));
        let sub = m.principal_submatrix(&[3, 0]).unwrap();
        assert_eq!(sub.get(0, 1), 4);
    }

    #[test]
    fn submatrix_errors() {
        let m = b4();
        assert_eq!(m.principal_submatrix(&[0, 4]), Err(MatrixError::IndexOutOfRange { index: 4, n: 4 }));
        assert_eq!(m.principal_submatrix(&[1, 1]), Err(MatrixError::DuplicateIndex { index: 1 }));
    }

    #[test]
    fn frobenius_and_irreducible() {
        let m = b4();
        assert_eq!(m.frobenius_sq(), 2 * (9 + 16 + 9));
        assert!(m.is_irreducible());
        assert!(!IntSymMatrix::zeros(3).is_irreducible());
    }
}
