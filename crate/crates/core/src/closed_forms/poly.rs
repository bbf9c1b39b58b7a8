use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::ClosedFormError;

/// Univariate polynomial with exact integer coefficients, ascending degree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = BigInt::one();
        Self { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn derivative(&self) -> Self {
        Self::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + big_to_f64(c))
    }

    /// Splits off the largest power of `x`: returns `(k, q)` with `self = x^k q`.
    pub fn split_x_power(&self) -> (usize, Self) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if self.is_zero() {
            return (0, Self::zero());
        }
        (k, Self::new(self.coeffs[k..].to_vec()))
    }

    /// Bound `B` such that every real root lies in `[-B, B]`.
    pub fn root_bound(&self) -> f64 {
        let Some(lead) = self.leading() else {
            return 1.0;
        };
        let lead = big_to_f64(lead).abs();
        let sum: f64 = self.coeffs[..self.coeffs.len() - 1].iter().map(|c| big_to_f64(c).abs() / lead).sum();
        1.0 + sum.max(1.0)
    }

    /// All real roots in ascending order. Roots of `x^k` factors are reported
    /// `k` times; other repeated roots are reported once.
    pub fn real_roots(&self) -> Vec<f64> {
        let (k, q) = self.split_x_power();
        let mut roots = vec![0.0; k];
        roots.extend(isolate(&q, q.root_bound()));
        roots.sort_by(f64::total_cmp);
        roots
    }

    /// Largest real root, found by sign-change bisection inside the root bound.
    pub fn largest_root(&self) -> Result<f64, ClosedFormError> {
        match self.degree() {
            None | Some(0) => return Err(ClosedFormError::NoRootInBracket),
            _ => {}
        }
        self.real_roots().last().copied().ok_or(ClosedFormError::NoRootInBracket)
    }

    /// Positive real roots in descending order.
    pub fn positive_roots(&self) -> Vec<f64> {
        let mut r: Vec<f64> = self.real_roots().into_iter().filter(|&x| x > 0.0).collect();
        r.reverse();
        r
    }
}

pub(crate) fn big_to_f64(x: &BigInt) -> f64 {
    x.to_f64().unwrap_or(if x.is_negative() { f64::NEG_INFINITY } else { f64::INFINITY })
}

/// Real roots of `p` (no root at zero expected, but harmless) inside `[-bound, bound]`.
///
/// Critical points from the derivative split the bracket into monotone
/// pieces; each piece holds at most one root, found by bisection.
fn isolate(p: &IntPolynomial, bound: f64) -> Vec<f64> {
    match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => return vec![-big_to_f64(&p.coeffs[0]) / big_to_f64(&p.coeffs[1])],
        _ => {}
    }
    let mut knots = vec![-bound];
    knots.extend(isolate(&p.derivative(), bound).into_iter().filter(|x| x.abs() < bound));
    knots.push(bound);

    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (flo, fhi) = (p.eval_f64(lo), p.eval_f64(hi));
        if flo == 0.0 {
            push_root(&mut roots, lo);
        }
        if flo.signum() * fhi.signum() < 0.0 {
            push_root(&mut roots, bisect(p, lo, hi, flo));
        }
    }
    // tangent roots at critical points (even multiplicity)
    for &c in &knots[1..knots.len() - 1] {
        if p.eval_f64(c).abs() <= 64.0 * f64::EPSILON * magnitude(p, c)
            && !roots.iter().any(|r| (r - c).abs() <= 1e-9 * c.abs().max(1.0))
        {
            push_root(&mut roots, c);
        }
    }
    if p.eval_f64(bound) == 0.0 {
        push_root(&mut roots, bound);
    }
    roots.sort_by(f64::total_cmp);
    roots
}

/// Sum of `|c_k| |x|^k`, the scale of rounding error in evaluating `p(x)`.
fn magnitude(p: &IntPolynomial, x: f64) -> f64 {
    p.coeffs.iter().rev().fold(0.0, |acc, c| acc * x.abs() + big_to_f64(c).abs())
}

fn push_root(roots: &mut Vec<f64>, x: f64) {
    if !roots.contains(&x) {
        roots.push(x);
    }
}

fn bisect(p: &IntPolynomial, mut lo: f64, mut hi: f64, flo: f64) -> f64 {
    let neg_at_lo = flo < 0.0;
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = p.eval_f64(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == neg_at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: Self) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: Self) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = k == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match k {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let p = IntPolynomial::from_i64(&[-4, 0, 1]);
        assert_eq!(p.to_string(), "x^2 - 4");
        let q = &p * &IntPolynomial::monomial(2);
        assert_eq!(q.to_string(), "x^4 - 4x^2");
        assert_eq!(q.split_x_power(), (2, p.clone()));
        assert_eq!((&q - &q), IntPolynomial::zero());
        assert_eq!(IntPolynomial::from_i64(&[0, 0, 0]).degree(), None);
        assert_eq!(IntPolynomial::from_i64(&[1, 2, 3]).derivative(), IntPolynomial::from_i64(&[2, 6]));
        assert_eq!(IntPolynomial::from_i64(&[3669, -108, -161, 0, 1]).to_string(), "x^4 - 161x^2 - 108x + 3669");
        assert_eq!(IntPolynomial::from_i64(&[-1, -1]).to_string(), "-x - 1");
    }

    #[test]
    fn exact_eval() {
        let p = IntPolynomial::from_i64(&[3669, -108, -161, 0, 1]);
        assert_eq!(p.eval(&BigInt::from(-3)), BigInt::from(81 - 161 * 9 + 324 + 3669));
    }

    #[test]
    fn largest_roots() {
        assert_eq!(IntPolynomial::from_i64(&[-4, 0, 1]).largest_root().unwrap(), 2.0);
        let r = IntPolynomial::from_i64(&[1681, 0, -107, 0, 1]).largest_root().unwrap();
        let expect = ((107.0 + 4725f64.sqrt()) / 2.0).sqrt();
        assert!((r - expect).abs() < 1e-12 * expect);
        let r = IntPolynomial::from_i64(&[3669, -108, -161, 0, 1]).largest_root().unwrap();
        assert!(r > 11.0 && r < 13.0);
        assert!(IntPolynomial::from_i64(&[1, 0, 1]).largest_root().is_err());
        assert!(IntPolynomial::from_i64(&[5]).largest_root().is_err());
    }

    #[test]
    fn roots_with_multiplicity_structure() {
        // x^3 (x - 1)^2 (x + 2)
        let p =
            &(&IntPolynomial::monomial(3) * &IntPolynomial::from_i64(&[1, -2, 1])) * &IntPolynomial::from_i64(&[2, 1]);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 5);
        assert!((roots[0] + 2.0).abs() < 1e-12);
        assert!(roots[1..4].iter().all(|&x| x == 0.0));
        assert!((roots[4] - 1.0).abs() < 1e-6);
    }

    #[test]
    fn close_roots_are_separated() {
        // (x - 10)(x - 10.001) scaled: 1000x^2 - 20001x + 100010
        let p = IntPolynomial::from_i64(&[100010, -20001, 1000]);
        let roots = p.real_roots();
        assert_eq!(roots.len(), 2);
        assert!((roots[0] - 10.0).abs() < 1e-9 && (roots[1] - 10.001).abs() < 1e-9);
    }
}
