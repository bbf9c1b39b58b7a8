//! Equitable partitions, exact quotient matrices and their characteristic
//! polynomials.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};
use thiserror::Error;

use crate::closed_forms::IntPolynomial;
use crate::families::FamilySpec;
use crate::matrix::IntSymMatrix;
use crate::spectral::{sym_eigenvalues, symmetric_eigenvalues, SpectralError};

/// Eigenvalues of the quotient must each match one of the full matrix within this distance.
pub const CONTAINMENT_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("partition is not equitable (cells {row} -> {col})")]
    NotEquitable { row: usize, col: usize },
    #[error("quotient entry ({row}, {col}) is not an integer")]
    NonIntegerQuotient { row: usize, col: usize },
    #[error("no canonical partition for {0}")]
    UnsupportedFamily(String),
    #[error("partition line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// Ordered, disjoint, nonempty cells covering `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexPartition {
    n: usize,
    cells: Vec<Vec<usize>>,
}

impl VertexPartition {
    pub fn new(n: usize, cells: Vec<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut seen = vec![false; n];
        for (i, cell) in cells.iter().enumerate() {
            if cell.is_empty() {
                return Err(PartitionError::InvalidPartition(format!("cell {i} is empty")));
            }
            for &v in cell {
                if v >= n {
                    return Err(PartitionError::InvalidPartition(format!("vertex {v} out of range for n = {n}")));
                }
                if std::mem::replace(&mut seen[v], true) {
                    return Err(PartitionError::InvalidPartition(format!("vertex {v} appears twice")));
                }
            }
        }
        if let Some(v) = seen.iter().position(|&s| !s) {
            return Err(PartitionError::InvalidPartition(format!("vertex {v} is not covered")));
        }
        Ok(Self { n, cells })
    }

    pub fn singletons(n: usize) -> Self {
        Self { n, cells: (0..n).map(|v| vec![v]).collect() }
    }

    pub fn whole(n: usize) -> Self {
        Self { n, cells: vec![(0..n).collect()] }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    /// Same cells in a different order; `order[i]` is the old index of new cell `i`.
    pub fn reordered(&self, order: &[usize]) -> Result<Self, PartitionError> {
        Self::new(self.n, order.iter().map(|&i| self.cells[i].clone()).collect())
    }

    /// One cell per line, vertices separated by whitespace. `#` starts a comment.
    /// The order is the number of listed vertices.
    pub fn parse(text: &str) -> Result<Self, PartitionError> {
        let mut cells = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let cell = line
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>()
                        .map_err(|e| PartitionError::Parse { line: i + 1, message: format!("`{tok}`: {e}") })
                })
                .collect::<Result<Vec<_>, _>>()?;
            cells.push(cell);
        }
        let n = cells.iter().map(Vec::len).sum();
        Self::new(n, cells)
    }

    fn check_dim(&self, m: &IntSymMatrix) -> Result<(), PartitionError> {
        if self.n != m.dim() {
            return Err(PartitionError::InvalidPartition(format!(
                "partition covers {} vertices but matrix has dimension {}",
                self.n,
                m.dim()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for VertexPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cell in &self.cells {
            let line: Vec<String> = cell.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Quotient `q_ij = (sum of block (i, j)) / |X_i|`, kept exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMatrix {
    m: usize,
    sizes: Vec<usize>,
    block_sums: Vec<u64>,
    entries: Vec<BigRational>,
}

impl QuotientMatrix {
    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.m + j]
    }

    pub fn cell_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(BigRational::is_integer)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.entries.iter().map(|q| q.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// Row-major integer entries, or the first non-integral position.
    fn integer_entries(&self) -> Result<Vec<BigInt>, PartitionError> {
        self.entries
            .iter()
            .enumerate()
            .map(|(k, q)| {
                if q.is_integer() {
                    Ok(q.to_integer())
                } else {
                    Err(PartitionError::NonIntegerQuotient { row: k / self.m, col: k % self.m })
                }
            })
            .collect()
    }

    /// `D^{-1/2} S D^{-1/2}` with `S` the block sums and `D` the cell sizes;
    /// symmetric and similar to the quotient.
    fn symmetrized(&self) -> Vec<f64> {
        let m = self.m;
        let mut out = vec![0.0; m * m];
        for i in 0..m {
            for j in 0..m {
                out[i * m + j] = self.block_sums[i * m + j] as f64 / ((self.sizes[i] * self.sizes[j]) as f64).sqrt();
            }
        }
        out
    }
}

impl fmt::Display for QuotientMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.m {
            let row: Vec<String> = (0..self.m).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

fn block_sums(m: &IntSymMatrix, pi: &VertexPartition) -> Vec<u64> {
    let k = pi.len();
    let mut out = vec![0u64; k * k];
    for (i, xi) in pi.cells().iter().enumerate() {
        for (j, xj) in pi.cells().iter().enumerate() {
            out[i * k + j] = xi.iter().map(|&u| xj.iter().map(|&v| u64::from(m.get(u, v))).sum::<u64>()).sum();
        }
    }
    out
}

pub fn quotient(m: &IntSymMatrix, pi: &VertexPartition) -> Result<QuotientMatrix, PartitionError> {
    pi.check_dim(m)?;
    let k = pi.len();
    let sums = block_sums(m, pi);
    let sizes: Vec<usize> = pi.cells().iter().map(Vec::len).collect();
    let entries =
        (0..k * k).map(|idx| BigRational::new(BigInt::from(sums[idx]), BigInt::from(sizes[idx / k]))).collect();
    Ok(QuotientMatrix { m: k, sizes, block_sums: sums, entries })
}

/// First block `(i, j)` whose row sums are not constant, if any.
fn first_unequal_block(m: &IntSymMatrix, pi: &VertexPartition) -> Option<(usize, usize)> {
    for (i, xi) in pi.cells().iter().enumerate() {
        for (j, xj) in pi.cells().iter().enumerate() {
            let row_sum = |u: usize| xj.iter().map(|&v| u64::from(m.get(u, v))).sum::<u64>();
            let first = row_sum(xi[0]);
            if xi[1..].iter().any(|&u| row_sum(u) != first) {
                return Some((i, j));
            }
        }
    }
    None
}

pub fn is_equitable(m: &IntSymMatrix, pi: &VertexPartition) -> Result<bool, PartitionError> {
    pi.check_dim(m)?;
    Ok(first_unequal_block(m, pi).is_none())
}

/// Characteristic polynomial `det(xI - A)` of a square integer matrix by
/// Berkowitz's division-free algorithm.
pub fn berkowitz(a: &[BigInt], n: usize) -> IntPolynomial {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    let at = |r: usize, c: usize| &a[r * n + c];
    // descending coefficients of the trailing principal submatrix
    let mut vect = vec![BigInt::one()];
    for s in (0..n).rev() {
        let k = n - 1 - s;
        let rows = s + 1..n;
        // powers A^j C, starting from C
        let mut col: Vec<BigInt> = rows.clone().map(|r| at(r, s).clone()).collect();
        let mut toeplitz = Vec::with_capacity(k + 2);
        toeplitz.push(BigInt::one());
        toeplitz.push(-at(s, s));
        for _ in 0..k {
            let rc: BigInt = rows.clone().zip(&col).map(|(c, x)| at(s, c) * x).sum();
            toeplitz.push(-rc);
            col = rows.clone().map(|r| rows.clone().zip(&col).map(|(c, x)| at(r, c) * x).sum()).collect();
        }
        vect = (0..k + 2).map(|i| (0..=i.min(k)).map(|j| &toeplitz[i - j] * &vect[j]).sum()).collect();
    }
    vect.reverse();
    IntPolynomial::new(vect)
}

/// `det(xI - Q)` for an integral quotient.
pub fn char_poly_exact(q: &QuotientMatrix) -> Result<IntPolynomial, PartitionError> {
    Ok(berkowitz(&q.integer_entries()?, q.dim()))
}

/// Characteristic polynomial of an arbitrary rational quotient, scaled to
/// integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledCharPoly {
    /// `scale * det(xI - Q)`.
    pub poly: IntPolynomial,
    pub scale: BigInt,
}

/// Clears denominators with `L = lcm` of all entry denominators: the result is
/// `L^m det(xI - Q)`, computed as `det(yI - LQ)` at `y = Lx`.
pub fn char_poly_scaled(q: &QuotientMatrix) -> ScaledCharPoly {
    let m = q.dim();
    let l = q.entries.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let scaled: Vec<BigInt> = q.entries.iter().map(|e| (e * &l).to_integer()).collect();
    let p = berkowitz(&scaled, m);
    let mut power = BigInt::one();
    let coeffs = (0..=m)
        .map(|k| {
            let c = p.coeff(k) * &power;
            power *= &l;
            c
        })
        .collect();
    ScaledCharPoly { poly: IntPolynomial::new(coeffs), scale: num_traits::pow(l, m) }
}

/// Whether every quotient eigenvalue, with multiplicity, matches a distinct
/// eigenvalue of `m` within [`CONTAINMENT_TOL`].
pub fn spectrum_contained(q: &QuotientMatrix, m: &IntSymMatrix, pi: &VertexPartition) -> Result<bool, PartitionError> {
    pi.check_dim(m)?;
    if let Some((row, col)) = first_unequal_block(m, pi) {
        return Err(PartitionError::NotEquitable { row, col });
    }
    let small = symmetric_eigenvalues(q.symmetrized(), q.dim())?;
    let big = sym_eigenvalues(m)?;
    let mut used = vec![false; big.len()];
    for x in small {
        let best = big
            .values()
            .iter()
            .enumerate()
            .filter(|&(i, y)| !used[i] && (x - y).abs() <= CONTAINMENT_TOL)
            .min_by(|a, b| (x - a.1).abs().total_cmp(&(x - b.1).abs()));
        match best {
            Some((i, _)) => used[i] = true,
            None => return Ok(false),
        }
    }
    Ok(true)
}

/// The canonical equitable partition of `T_{n,5}^{a,b}`, `T_{n,6}^{a,b,a}`,
/// `T_{n,6}^{a,b,a+1}` or `T_{n,7}^{a,b}`, in the family's labeling.
///
/// Cells that would be empty (no pendants at a slot) are omitted.
pub fn canonical_partition(family: &FamilySpec) -> Result<VertexPartition, PartitionError> {
    let unsupported = || PartitionError::UnsupportedFamily(family.to_string());
    family.validate_shape().map_err(|_| unsupported())?;
    let pend = |slot: usize| family.pendant_labels(slot).collect::<Vec<_>>();
    let with = |v: usize, rest: Vec<usize>| {
        let mut cell = vec![v];
        cell.extend(rest);
        cell
    };
    let cells = match *family {
        FamilySpec::OddCaterpillar { d: 5, .. } => {
            vec![vec![0], with(1, pend(0)), vec![2], vec![3], with(4, pend(1)), vec![5]]
        }
        FamilySpec::EvenCaterpillar { d: 6, a, c, .. } if c == a || c == a + 1 => {
            vec![vec![0], with(1, pend(0)), vec![2], vec![3], pend(1), vec![4], with(5, pend(2)), vec![6]]
        }
        FamilySpec::OddCaterpillar { d: 7, .. } => {
            vec![vec![0], vec![1], with(2, pend(0)), vec![3], vec![4], with(5, pend(1)), vec![6], vec![7]]
        }
        _ => return Err(unsupported()),
    };
    VertexPartition::new(family.order(), cells.into_iter().filter(|c| !c.is_empty()).collect())
}

/// Splits `p = x^k q` and returns `(k, q)`, with `q` made monic-positive.
pub fn nontrivial_factor(p: &IntPolynomial) -> (usize, IntPolynomial) {
    let (k, q) = p.split_x_power();
    if q.leading().is_some_and(Signed::is_negative) {
        return (k, -&q);
    }
    (k, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn berkowitz_small() {
        assert_eq!(berkowitz(&ints(&[0]), 1), IntPolynomial::from_i64(&[0, 1]));
        assert_eq!(berkowitz(&[], 0), IntPolynomial::from_i64(&[1]));
        // [[1,2],[3,4]] -> x^2 - 5x - 2
        assert_eq!(berkowitz(&ints(&[1, 2, 3, 4]), 2), IntPolynomial::from_i64(&[-2, -5, 1]));
        // [[2,0,0],[0,3,4],[0,4,9]] -> (x-2)(x^2-12x+11)
        let want = &IntPolynomial::from_i64(&[-2, 1]) * &IntPolynomial::from_i64(&[11, -12, 1]);
        assert_eq!(berkowitz(&ints(&[2, 0, 0, 0, 3, 4, 0, 4, 9]), 3), want);
        // companion matrix of x^3 - 6x^2 + 11x - 6
        let c = ints(&[0, 0, 6, 1, 0, -11, 0, 1, 6]);
        assert_eq!(berkowitz(&c, 3), IntPolynomial::from_i64(&[-6, 11, -6, 1]));
    }

    #[test]
    fn partition_validation() {
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![2]]).is_ok());
        assert!(VertexPartition::new(3, vec![vec![0, 1]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(VertexPartition::new(3, vec![vec![0, 1, 2], vec![]]).is_err());
        assert!(VertexPartition::new(2, vec![vec![0, 2]]).is_err());
    }

    #[test]
    fn parse_round_trip() {
        let p = VertexPartition::parse("# cells\n0\n1 3\n\n2 4 5\n").unwrap();
        assert_eq!(p.order(), 6);
        assert_eq!(p.cells(), &[vec![0], vec![1, 3], vec![2, 4, 5]]);
        assert_eq!(VertexPartition::parse(&p.to_string()).unwrap(), p);
        assert!(matches!(VertexPartition::parse("0 x\n"), Err(PartitionError::Parse { line: 1, .. })));
    }

    #[test]
    fn scaled_char_poly_for_rational_quotient() {
        // path 0-1-2 adjacency with cells {0,1},{2}: q = [[1, 1/2], [1, 0]]
        let m = IntSymMatrix::new(3, vec![0, 1, 0, 1, 0, 1, 0, 1, 0]).unwrap();
        let pi = VertexPartition::new(3, vec![vec![0, 1], vec![2]]).unwrap();
        let q = quotient(&m, &pi).unwrap();
        assert!(!q.is_integral());
        assert!(matches!(char_poly_exact(&q), Err(PartitionError::NonIntegerQuotient { row: 0, col: 1 })));
        let s = char_poly_scaled(&q);
        assert_eq!(s.scale, BigInt::from(4));
        // det(xI - q) = x^2 - x - 1/2, times 4
        assert_eq!(s.poly, IntPolynomial::from_i64(&[-2, -4, 4]));
        assert!(matches!(spectrum_contained(&q, &m, &pi), Err(PartitionError::NotEquitable { .. })));
    }
}
