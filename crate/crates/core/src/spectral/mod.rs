//! E-spectra and the statistics derived from them.

mod eigen;

pub use eigen::{symmetric_eigenvalues, MAX_SWEEPS};

use serde::Serialize;
use thiserror::Error;

use crate::matrix::{IntSymMatrix, MatrixError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpectralError {
    #[error("eigenvalue {index} did not converge after {sweeps} sweeps")]
    NoConvergence { index: usize, sweeps: usize },
    #[error("rank {k} out of range for {n} eigenvalues")]
    RankOutOfRange { k: usize, n: usize },
    #[error(transparent)]
    Matrix(#[from] MatrixError),
}

/// Relative zero threshold: `|x| <= ZERO_TOL_FACTOR * n * max|entry|` counts as zero.
pub const ZERO_TOL_FACTOR: f64 = 1e-8;

/// Absolute gap used when grouping eigenvalues into multiplicities.
pub const GROUP_GAP: f64 = 1e-7;

/// Slack allowed in each interlacing inequality.
pub const INTERLACING_SLACK: f64 = 1e-8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn new(n_plus: usize, n_minus: usize, n_zero: usize) -> Self {
        Self { n_plus, n_minus, n_zero }
    }
}

/// Eigenvalues sorted in descending order, with the zero threshold used to classify them.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    values: Vec<f64>,
    zero_tol: f64,
}

impl Spectrum {
    /// Wraps precomputed eigenvalues; they are re-sorted descending.
    pub fn from_values(mut values: Vec<f64>, zero_tol: f64) -> Self {
        values.sort_by(|x, y| y.total_cmp(x));
        Self { values, zero_tol }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }

    pub fn with_zero_tol(mut self, zero_tol: f64) -> Self {
        self.zero_tol = zero_tol;
        self
    }

    pub fn inertia(&self) -> Inertia {
        let mut out = Inertia::new(0, 0, 0);
        for &x in &self.values {
            if x.abs() <= self.zero_tol {
                out.n_zero += 1;
            } else if x > 0.0 {
                out.n_plus += 1;
            } else {
                out.n_minus += 1;
            }
        }
        out
    }

    /// E-energy: the sum of absolute eigenvalues.
    pub fn energy(&self) -> f64 {
        self.values.iter().map(|x| x.abs()).sum()
    }

    pub fn positive_sum(&self) -> f64 {
        self.values.iter().filter(|&&x| x > 0.0).sum()
    }

    /// The `k`-th largest eigenvalue, 1-based.
    pub fn xi(&self, k: usize) -> Result<f64, SpectralError> {
        if k == 0 || k > self.values.len() {
            return Err(SpectralError::RankOutOfRange { k, n: self.values.len() });
        }
        Ok(self.values[k - 1])
    }

    pub fn spectral_radius(&self) -> f64 {
        self.values.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Distinct eigenvalues with multiplicities; neighbours closer than
    /// [`GROUP_GAP`] share a group, represented by their mean.
    pub fn grouped(&self) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for &x in &self.values {
            match out.last_mut() {
                Some((_, count, last)) if (*last - x).abs() < GROUP_GAP => {
                    *count += 1;
                    *last = x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        // recompute means per group
        let mut i = 0;
        out.into_iter()
            .map(|(_, count, _)| {
                let mean = self.values[i..i + count].iter().sum::<f64>() / count as f64;
                i += count;
                (mean, count)
            })
            .collect()
    }
}

/// Default zero threshold for a matrix of dimension `n` with largest entry `max_entry`.
pub fn default_zero_tol(n: usize, max_entry: f64) -> f64 {
    ZERO_TOL_FACTOR * n as f64 * max_entry
}

/// Full spectrum of an integer symmetric matrix.
pub fn sym_eigenvalues(m: &IntSymMatrix) -> Result<Spectrum, SpectralError> {
    let values = symmetric_eigenvalues(m.to_f64(), m.dim())?;
    Ok(Spectrum { values, zero_tol: default_zero_tol(m.dim(), f64::from(m.max_entry())) })
}

pub fn inertia_of(s: &Spectrum) -> Inertia {
    s.inertia()
}

pub fn ecc_energy(s: &Spectrum) -> f64 {
    s.energy()
}

pub fn xi_k(s: &Spectrum, k: usize) -> Result<f64, SpectralError> {
    s.xi(k)
}

/// Cauchy interlacing between `m` and its principal submatrix on `idx`.
pub fn check_interlacing(m: &IntSymMatrix, idx: &[usize]) -> Result<bool, SpectralError> {
    let sub = m.principal_submatrix(idx)?;
    let lambda = sym_eigenvalues(m)?;
    let mu = sym_eigenvalues(&sub)?;
    let (big, small) = (lambda.values(), mu.values());
    let shift = big.len() - small.len();
    Ok(small
        .iter()
        .enumerate()
        .all(|(i, &x)| big[shift + i] - INTERLACING_SLACK <= x && x <= big[i] + INTERLACING_SLACK))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::FamilySpec;

    fn ecc_spectrum(spec: FamilySpec) -> Spectrum {
        sym_eigenvalues(&spec.build().unwrap().eccentricity_matrix()).unwrap()
    }

    fn assert_values(s: &Spectrum, expect: &[f64], tol: f64) {
        assert_eq!(s.len(), expect.len());
        for (x, y) in s.values().iter().zip(expect) {
            assert!((x - y).abs() <= tol, "{:?} vs {expect:?}", s.values());
        }
    }

    #[test]
    fn k2_spectrum() {
        let s = ecc_spectrum(FamilySpec::Path { n: 2 });
        assert_values(&s, &[1.0, -1.0], 1e-12);
        assert_eq!(s.inertia(), Inertia::new(1, 1, 0));
    }

    fn sorted_desc(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|x, y| y.total_cmp(x));
        v
    }

    #[test]
    fn star_k14() {
        let s = ecc_spectrum(FamilySpec::Star { n: 5 });
        let r = 13f64.sqrt();
        assert_values(&s, &sorted_desc(vec![3.0 + r, 3.0 - r, -2.0, -2.0, -2.0]), 1e-9);
        assert_eq!(s.inertia(), Inertia::new(1, 4, 0));
        assert!((s.xi(1).unwrap() - (3.0 + r)).abs() < 1e-9);
        assert!((s.energy() - 2.0 * (3.0 + r)).abs() < 1e-9);
        assert_eq!(s.grouped().len(), 3);
        assert_eq!(s.grouped()[2].1, 3);
    }

    #[test]
    fn p4_spectrum() {
        let s = ecc_spectrum(FamilySpec::Path { n: 4 });
        assert_values(&s, &[4.0, 1.0, -1.0, -4.0], 1e-10);
        assert_eq!(s.inertia(), Inertia::new(2, 2, 0));
        assert!((s.energy() - 10.0).abs() < 1e-10);
        assert!((s.xi(2).unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn t_8_5_1_1_inertia_and_energy() {
        let s = ecc_spectrum(FamilySpec::odd(5, 1, 1));
        assert_eq!(s.inertia(), Inertia::new(2, 2, 4));
        assert!((s.energy() - 2.0 * 189f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn t_6_3_0_2_second_eigenvalue() {
        let s = ecc_spectrum(FamilySpec::odd(3, 0, 2));
        let expect = ((43.0 - 1657f64.sqrt()) / 2.0).sqrt();
        assert!((s.xi(2).unwrap() - expect).abs() < 1e-9);
        assert!((s.xi(2).unwrap() - 1.0709).abs() < 1e-4);
    }

    #[test]
    fn rank_errors() {
        let s = ecc_spectrum(FamilySpec::Path { n: 4 });
        assert_eq!(s.xi(0), Err(SpectralError::RankOutOfRange { k: 0, n: 4 }));
        assert_eq!(s.xi(5), Err(SpectralError::RankOutOfRange { k: 5, n: 4 }));
    }

    #[test]
    fn tolerance_override_changes_classification() {
        let s = ecc_spectrum(FamilySpec::Path { n: 4 }).with_zero_tol(1.5);
        assert_eq!(s.inertia(), Inertia::new(1, 1, 2));
    }

    #[test]
    fn interlacing_on_diametrical_quadruple() {
        let g = FamilySpec::even(6, 1, 2, 1).build().unwrap();
        let e = g.eccentricity_matrix();
        let p = g.diametrical_path();
        let d = p.len() - 1;
        let quad = [p[0], p[1], p[d - 1], p[d]];
        assert!(check_interlacing(&e, &quad).unwrap());
        let all: Vec<usize> = (0..g.order()).collect();
        assert!(check_interlacing(&e, &all).unwrap());
        assert!(matches!(check_interlacing(&e, &[0, 0]), Err(SpectralError::Matrix(_))));
    }
}
