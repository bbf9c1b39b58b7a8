//! Closed-form E-spectra, energies, bounds and quartic factors for the tree
//! families `K_{1,n-1}`, `T_{n,3}^{a,b}`, `T_{n,5}^{a,b}`, `T_{n,6}^{a,b,a}`,
//! `T_{n,6}^{a,b,a+1}` and `T_{n,7}^{a,b}`.
//!
//! Everything here is evaluated from formulas alone; agreement with the
//! numeric eigensolver is checked in tests and by the verification module.

mod discrepancy;
mod poly;

pub use discrepancy::{adjudicate, adjudicate_all, Candidate, Discrepancy, DiscrepancyId, Verdict, ADJUDICATION_TOL};
pub use poly::IntPolynomial;

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClosedFormError {
    #[error("order {n} too small (needs n >= {min})")]
    OrderTooSmall { n: usize, min: usize },
    #[error("diameter {d} too small (needs d >= {min})")]
    DiameterTooSmall { d: usize, min: usize },
    #[error("invalid family parameters: {0}")]
    InvalidFamilyParameters(String),
    #[error("{what}({d}) is not an integer")]
    NonIntegerResult { what: &'static str, d: usize },
    #[error("no real root inside the search bracket")]
    NoRootInBracket,
}

fn invalid(msg: String) -> ClosedFormError {
    ClosedFormError::InvalidFamilyParameters(msg)
}

fn need_order(n: usize, min: usize) -> Result<(), ClosedFormError> {
    if n < min {
        return Err(ClosedFormError::OrderTooSmall { n, min });
    }
    Ok(())
}

/// One eigenvalue of a closed-form spectrum with its multiplicity and the
/// formula it came from.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedEigen {
    pub value: f64,
    pub multiplicity: usize,
    pub source: &'static str,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClosedSpectrum {
    pub eigen: Vec<ClosedEigen>,
}

impl ClosedSpectrum {
    fn new(parts: Vec<(f64, usize, &'static str)>) -> Self {
        Self {
            eigen: parts
                .into_iter()
                .filter(|&(_, m, _)| m > 0)
                .map(|(value, multiplicity, source)| ClosedEigen { value, multiplicity, source })
                .collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.eigen.iter().map(|e| e.multiplicity).sum()
    }

    /// All eigenvalues with repetition, descending.
    pub fn sorted_values(&self) -> Vec<f64> {
        let mut v: Vec<f64> = self.eigen.iter().flat_map(|e| std::iter::repeat_n(e.value, e.multiplicity)).collect();
        v.sort_by(|x, y| y.total_cmp(x));
        v
    }

    pub fn energy(&self) -> f64 {
        self.eigen.iter().map(|e| e.value.abs() * e.multiplicity as f64).sum()
    }
}

/// `±sqrt((alpha ± sqrt(beta)) / 2)` plus `zeros` zero eigenvalues.
fn symmetric_quartic_spectrum(alpha: f64, beta: f64, zeros: usize, tag: &'static str) -> ClosedSpectrum {
    let big = ((alpha + beta.sqrt()) / 2.0).sqrt();
    // alpha - sqrt(beta) = (alpha^2 - beta) / (alpha + sqrt(beta)) avoids cancellation
    let small = ((alpha * alpha - beta) / (alpha + beta.sqrt()) / 2.0).sqrt();
    ClosedSpectrum::new(vec![(big, 1, tag), (small, 1, tag), (0.0, zeros, tag), (-small, 1, tag), (-big, 1, tag)])
}

/// E-spectrum of the star `K_{1,n-1}`.
pub fn star_spectrum(n: usize) -> Result<ClosedSpectrum, ClosedFormError> {
    need_order(n, 3)?;
    let n = n as f64;
    let r = (n * n - 3.0 * n + 3.0).sqrt();
    Ok(ClosedSpectrum::new(vec![(n - 2.0 + r, 1, "star"), (n - 2.0 - r, 1, "star"), (-2.0, n as usize - 2, "star")]))
}

fn check_double_star(n: usize, a: usize, b: usize) -> Result<(), ClosedFormError> {
    need_order(n, 4)?;
    if a + b + 4 != n || b < a {
        return Err(invalid(format!("double star needs a + b = n - 4 and b >= a (n={n}, a={a}, b={b})")));
    }
    Ok(())
}

/// `(alpha, beta)` for the double star `T_{n,3}^{a,b}`.
pub fn double_star_alpha_beta(a: usize, b: usize) -> (i64, i64) {
    let (a, b) = (a as i64, b as i64);
    let alpha = 9 * a * b + 13 * a + 13 * b + 17;
    (alpha, alpha * alpha - 64 * (a + 1) * (b + 1))
}

pub fn double_star_spectrum(n: usize, a: usize, b: usize) -> Result<ClosedSpectrum, ClosedFormError> {
    check_double_star(n, a, b)?;
    let (alpha, beta) = double_star_alpha_beta(a, b);
    Ok(symmetric_quartic_spectrum(alpha as f64, beta as f64, n - 4, "double-star"))
}

/// Second largest E-eigenvalue of `T_{n,3}^{a,n-4-a}`.
pub fn xi2_diam3(n: usize, a: usize) -> Result<f64, ClosedFormError> {
    need_order(n, 4)?;
    if a > (n - 4) / 2 {
        return Err(invalid(format!("a={a} exceeds floor((n-4)/2) for n={n}")));
    }
    let (n, a) = (n as f64, a as f64);
    let prod = a * (n - 4.0 - a);
    let s = 9.0 * prod + 13.0 * n - 35.0;
    let four_c = 64.0 * (prod + n - 3.0);
    let root = (s * s - four_c).sqrt();
    // s - root rewritten as four_c / (s + root)
    Ok((four_c / (s + root) / 2.0).sqrt())
}

/// `xi_2(T_{n,3}^{0,n-4}) < sqrt(2)`, checked both in floating point and as
/// the equivalent integer inequality `(13n - 39)^2 < 169n^2 - 974n + 1417`.
pub fn xi2_sqrt2_bound(n: usize) -> bool {
    if n < 4 {
        return false;
    }
    let ni = n as i128;
    let exact = (13 * ni - 39).pow(2) < 169 * ni * ni - 974 * ni + 1417;
    let float = xi2_diam3(n, 0).is_ok_and(|x| x < std::f64::consts::SQRT_2);
    exact && float
}

/// Second largest eigenvalue of the diametrical 4x4 principal submatrix `B`.
pub fn xi2_floor_d_ge_4(d: usize) -> Result<f64, ClosedFormError> {
    if d < 4 {
        return Err(ClosedFormError::DiameterTooSmall { d, min: 4 });
    }
    let d = d as f64;
    Ok(((d * d + 4.0 * (d - 1.0) * (d - 1.0)).sqrt() - d) / 2.0)
}

/// Integer form of `xi2_floor_d_ge_4(d) > sqrt(2)`: `(d^2 - 2d - 1)^2 > 2 d^2`.
pub fn lambda2_exceeds_sqrt2_exact(d: usize) -> bool {
    let d = d as i128;
    let lhs = d * d - 2 * d - 1;
    lhs > 0 && lhs * lhs > 2 * d * d
}

/// The diametrical principal submatrix `B` for diameter `d`, vertex order `v_0, v_1, v_{d-1}, v_d`.
pub fn diametrical_block(d: usize) -> crate::matrix::IntSymMatrix {
    let (x, y) = ((d - 1) as u32, d as u32);
    crate::matrix::IntSymMatrix::new(4, vec![0, 0, x, y, 0, 0, 0, x, x, 0, 0, 0, y, x, 0, 0])
        .expect("B is symmetric with zero diagonal")
}

/// E-energy of `T_{n,3}^{0,n-4}`: `2 sqrt(13n - 35 + 8 sqrt(n - 3))`.
pub fn energy_t_n3(n: usize) -> Result<f64, ClosedFormError> {
    need_order(n, 5)?;
    let n = n as f64;
    Ok(2.0 * (13.0 * n - 35.0 + 8.0 * (n - 3.0).sqrt()).sqrt())
}

fn check_t5(n: usize, a: usize, b: usize) -> Result<(), ClosedFormError> {
    if a + b + 6 != n || b < a {
        return Err(invalid(format!("T_(n,5) needs a + b = n - 6 and b >= a (n={n}, a={a}, b={b})")));
    }
    Ok(())
}

/// E-spectrum of `T_{n,5}^{a,b}`; `a = 0` is accepted.
pub fn t5_spectrum(n: usize, a: usize, b: usize) -> Result<ClosedSpectrum, ClosedFormError> {
    check_t5(n, a, b)?;
    let (s, p) = ((a + b) as f64, (a * b) as f64);
    let alpha = 16.0 * s + 75.0;
    let beta = 256.0 * s * s + 800.0 * s - 1024.0 * p + 3125.0;
    Ok(symmetric_quartic_spectrum(alpha, beta, n - 4, "T5"))
}

/// `2 sqrt(16n - 21 + sqrt(1600n - 7100 + 1024ab))`.
pub fn t5_energy(n: usize, a: usize, b: usize) -> Result<f64, ClosedFormError> {
    check_t5(n, a, b)?;
    let (n, p) = (n as f64, (a * b) as f64);
    Ok(2.0 * (16.0 * n - 21.0 + (1600.0 * n - 7100.0 + 1024.0 * p).sqrt()).sqrt())
}

fn check_t6_aba(n: usize, a: usize, b: usize) -> Result<(), ClosedFormError> {
    if 2 * a + b + 7 != n {
        return Err(invalid(format!("T_(n,6)^(a,b,a) needs 2a + b = n - 7 (n={n}, a={a}, b={b})")));
    }
    Ok(())
}

/// E-spectrum of `T_{n,6}^{a,b,a}`: `3 ± sqrt(25a + 32b + 68)`, `±5 sqrt(a + 2) - 3`.
///
/// Stated for `a >= 1`; the same values hold at `a = 0` and are accepted.
pub fn t6_aba_spectrum(n: usize, a: usize, b: usize) -> Result<ClosedSpectrum, ClosedFormError> {
    check_t6_aba(n, a, b)?;
    let (a, b) = (a as f64, b as f64);
    let r = (25.0 * a + 32.0 * b + 68.0).sqrt();
    let q = 5.0 * (a + 2.0).sqrt();
    Ok(ClosedSpectrum::new(vec![
        (3.0 + r, 1, "T6-aba"),
        (q - 3.0, 1, "T6-aba"),
        (0.0, n - 4, "T6-aba"),
        (3.0 - r, 1, "T6-aba"),
        (-q - 3.0, 1, "T6-aba"),
    ]))
}

/// `2 (sqrt(32n - 39a - 156) + 5 sqrt(a + 2))`.
pub fn t6_aba_energy(n: usize, a: usize, b: usize) -> Result<f64, ClosedFormError> {
    check_t6_aba(n, a, b)?;
    let (n, a) = (n as f64, a as f64);
    Ok(2.0 * ((32.0 * n - 39.0 * a - 156.0).sqrt() + 5.0 * (a + 2.0).sqrt()))
}

fn check_t6_ab_a1(n: usize, a: usize, b: usize) -> Result<(), ClosedFormError> {
    if 2 * a + b + 8 != n {
        return Err(invalid(format!("T_(n,6)^(a,b,a+1) needs 2a + b = n - 8 (n={n}, a={a}, b={b})")));
    }
    Ok(())
}

/// Quartic `p(x)` whose roots are the nonzero E-eigenvalues of `T_{n,6}^{a,b,a+1}`.
pub fn t6_ab_a1_polynomial(n: usize, a: usize, b: usize) -> Result<IntPolynomial, ClosedFormError> {
    check_t6_ab_a1(n, a, b)?;
    let (a, b) = (a as i64, b as i64);
    Ok(IntPolynomial::from_i64(&[
        625 * a * a + 3125 * a + 800 * a * b + 1712 * b + 3669,
        -(192 * b + 108),
        -(50 * a + 32 * b + 161),
        0,
        1,
    ]))
}

/// Values of `p` at `5 sqrt(a) - 3`, `1 + sqrt(32n - 39a - 156)`, `3 + sqrt(32n - 39a - 156)`.
/// The root-bracketing argument needs them to be positive, negative, positive.
pub fn t6_ab_a1_certificates(n: usize, a: usize, b: usize) -> Result<[f64; 3], ClosedFormError> {
    let p = t6_ab_a1_polynomial(n, a, b)?;
    let r = (32.0 * n as f64 - 39.0 * a as f64 - 156.0).sqrt();
    Ok([5.0 * (a as f64).sqrt() - 3.0, 1.0 + r, 3.0 + r].map(|x| p.eval_f64(x)))
}

/// `2 (x_1 + x_2)` over the two positive roots of [`t6_ab_a1_polynomial`].
pub fn t6_ab_a1_energy(n: usize, a: usize, b: usize) -> Result<f64, ClosedFormError> {
    let p = t6_ab_a1_polynomial(n, a, b)?;
    let pos = p.positive_roots();
    if pos.len() != 2 {
        return Err(ClosedFormError::NoRootInBracket);
    }
    Ok(2.0 * (pos[0] + pos[1]))
}

fn check_t7(n: usize, a: usize, b: usize) -> Result<(), ClosedFormError> {
    if a + b + 8 != n || b < a {
        return Err(invalid(format!("T_(n,7) needs a + b = n - 8 and b >= a (n={n}, a={a}, b={b})")));
    }
    Ok(())
}

/// E-spectrum of `T_{n,7}^{a,b}`; `a = 0` is accepted.
pub fn t7_spectrum(n: usize, a: usize, b: usize) -> Result<ClosedSpectrum, ClosedFormError> {
    check_t7(n, a, b)?;
    let (s, p) = ((a + b) as f64, (a * b) as f64);
    let alpha = 25.0 * s + 203.0;
    let beta = 625.0 * s * s + 2450.0 * s - 2500.0 * p + 17493.0;
    Ok(symmetric_quartic_spectrum(alpha, beta, n - 4, "T7"))
}

/// `2 sqrt(25n + 3 + sqrt(7700n - 37884 + 2500ab))`.
pub fn t7_energy(n: usize, a: usize, b: usize) -> Result<f64, ClosedFormError> {
    check_t7(n, a, b)?;
    let (n, p) = (n as f64, (a * b) as f64);
    Ok(2.0 * (25.0 * n + 3.0 + (7700.0 * n - 37884.0 + 2500.0 * p).sqrt()).sqrt())
}

fn exact_div_24(num: i64, what: &'static str, d: usize) -> Result<i64, ClosedFormError> {
    if num % 24 != 0 {
        return Err(ClosedFormError::NonIntegerResult { what, d });
    }
    Ok(num / 24)
}

/// `d (d - 1) (7d - 5) / 24`; integral for odd `d`.
pub fn gamma_d(d: usize) -> Result<i64, ClosedFormError> {
    let d_ = d as i64;
    exact_div_24(d_ * (d_ - 1) * (7 * d_ - 5), "Gamma", d)
}

/// `d (d - 1) (7d - 2) / 24`; integral for even `d`.
pub fn theta_d(d: usize) -> Result<i64, ClosedFormError> {
    let d_ = d as i64;
    exact_div_24(d_ * (d_ - 1) * (7 * d_ - 2), "Theta", d)
}

/// Expanded 2x2 determinant whose largest root is `xi_1(T_{n,d}^{a,b})`, odd `d >= 5`.
pub fn xi1_odd_quartic(d: usize, a: usize, b: usize) -> Result<IntPolynomial, ClosedFormError> {
    if d < 5 {
        return Err(ClosedFormError::DiameterTooSmall { d, min: 5 });
    }
    if d % 2 == 0 {
        return Err(invalid(format!("odd-diameter quartic needs odd d, got {d}")));
    }
    let g = gamma_d(d)?;
    let k2 = ((d as i64 + 3) / 2).pow(2);
    let (a, b, d) = (a as i64, b as i64, d as i64);
    Ok(IntPolynomial::from_i64(&[(g + k2 * a) * (g + k2 * b), 0, -(2 * g + k2 * (a + b) + d * d), 0, 1]))
}

/// Expanded 2x2 determinant whose largest root is `xi_1(T_{n,d}^{a,b,c})`, even `d >= 6`.
pub fn xi1_even_quartic(d: usize, a: usize, b: usize, c: usize) -> Result<IntPolynomial, ClosedFormError> {
    if d < 6 {
        return Err(ClosedFormError::DiameterTooSmall { d, min: 6 });
    }
    if d % 2 == 1 {
        return Err(invalid(format!("even-diameter quartic needs even d, got {d}")));
    }
    let t = theta_d(d)?;
    let (a, b, c, d) = (a as i64, b as i64, c as i64, d as i64);
    let k1 = ((d + 2) / 2).pow(2);
    let k2 = ((d + 4) / 2).pow(2);
    let diag = t + k1 * b;
    let off = (d / 2).pow(2) + k1 * b;
    Ok(IntPolynomial::from_i64(&[
        (diag + k2 * a) * (diag + k2 * c) - off * off,
        -2 * d * off,
        -(2 * diag + k2 * (a + c) + d * d),
        0,
        1,
    ]))
}

pub fn largest_root(p: &IntPolynomial) -> Result<f64, ClosedFormError> {
    p.largest_root()
}

/// `(sqrt(13n - 37), sqrt(13n - 36))`, which strictly bracket `xi_1(T_{n,3}^{0,n-4})`.
pub fn xi1_bounds_t_n3(n: usize) -> Result<(f64, f64), ClosedFormError> {
    need_order(n, 5)?;
    let n = n as f64;
    Ok(((13.0 * n - 37.0).sqrt(), (13.0 * n - 36.0).sqrt()))
}

/// Integer form of the strict sandwich: `(13n-39)^2 < D < (13n-37)^2` with `D = 169n^2 - 974n + 1417`.
pub fn xi1_bounds_exact(n: usize) -> bool {
    let n = n as i128;
    let disc = 169 * n * n - 974 * n + 1417;
    (13 * n - 39).pow(2) < disc && disc < (13 * n - 37).pow(2)
}

/// `xi_1(T_{n,3}^{0,n-4})`.
pub fn xi1_t_n3(n: usize) -> Result<f64, ClosedFormError> {
    need_order(n, 4)?;
    let n = n as f64;
    Ok(((13.0 * n - 35.0 + (169.0 * n * n - 974.0 * n + 1417.0).sqrt()) / 2.0).sqrt())
}

/// Lower bound on `xi_1` over all trees of order `n`.
pub fn min_gen_bound(n: usize) -> Result<f64, ClosedFormError> {
    need_order(n, 4)?;
    let nf = n as f64;
    Ok(if n <= 15 {
        let s = 13.0 * nf - 35.0;
        ((s + (s * s - 64.0 * (nf - 3.0)).sqrt()) / 2.0).sqrt()
    } else if n % 2 == 1 {
        ((16.0 * nf - 21.0 + (800.0 * nf - 1419.0).sqrt()) / 2.0).sqrt()
    } else {
        ((16.0 * nf - 21.0 + 5.0 * (32.0 * nf - 67.0).sqrt()) / 2.0).sqrt()
    })
}
