//! Eigenvalues of dense real symmetric matrices.
//!
//! Householder reduction to tridiagonal form followed by the implicit QL
//! iteration with Wilkinson-style shifts (the EISPACK `tred2`/`tql1` pair,
//! without eigenvector accumulation).

use super::SpectralError;

/// Sweeps allowed per eigenvalue before giving up.
pub const MAX_SWEEPS: usize = 64;

/// Returns all eigenvalues of the symmetric `n x n` row-major matrix `a`,
/// sorted in descending order. Only the lower triangle is read.
pub fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Result<Vec<f64>, SpectralError> {
    assert_eq!(a.len(), n * n, "matrix storage does not match dimension");
    if n == 0 {
        return Ok(Vec::new());
    }
    let norm = a.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    let (mut d, mut e) = tridiagonalize(&mut a, n);
    tridiagonal_ql(&mut d, &mut e, norm)?;
    d.sort_by(|x, y| y.total_cmp(x));
    Ok(d)
}

/// Householder reduction. Returns the diagonal and the subdiagonal, with
/// `e[i]` coupling rows `i - 1` and `i` (`e[0] = 0`).
fn tridiagonalize(a: &mut [f64], n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    let idx = |r: usize, c: usize| r * n + c;

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[idx(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[idx(i, l)];
            } else {
                for k in 0..=l {
                    a[idx(i, k)] /= scale;
                    h += a[idx(i, k)] * a[idx(i, k)];
                }
                let f = a[idx(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                a[idx(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..=l {
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[idx(j, k)] * a[idx(i, k)];
                    }
                    for k in (j + 1)..=l {
                        g += a[idx(k, j)] * a[idx(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * a[idx(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..=l {
                    let f = a[idx(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        a[idx(j, k)] -= f * e[k] + g * a[idx(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[idx(i, l)];
        }
        d[i] = h;
    }
    for (i, di) in d.iter_mut().enumerate() {
        *di = a[idx(i, i)];
    }
    e[0] = 0.0;
    (d, e)
}

/// Implicit QL on a symmetric tridiagonal matrix; eigenvalues overwrite `d`.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], norm: f64) -> Result<(), SpectralError> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;
    // absolute floor so zero diagonal blocks still deflate
    let floor = f64::EPSILON * f64::EPSILON * norm;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            if sweeps == MAX_SWEEPS {
                return Err(SpectralError::NoConvergence { index: l, sweeps });
            }
            sweeps += 1;

            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
    }

    #[test]
    fn small_cases() {
        assert_eq!(symmetric_eigenvalues(vec![], 0).unwrap(), Vec::<f64>::new());
        assert_eq!(symmetric_eigenvalues(vec![3.0], 1).unwrap(), vec![3.0]);
        let v = symmetric_eigenvalues(vec![0.0, 1.0, 1.0, 0.0], 2).unwrap();
        assert!(close(&v, &[1.0, -1.0], 1e-14));
        let v = symmetric_eigenvalues(vec![0.0; 9], 3).unwrap();
        assert!(close(&v, &[0.0, 0.0, 0.0], 0.0));
    }

    #[test]
    fn diagonal_matrix() {
        let mut a = vec![0.0; 16];
        for (i, x) in [2.0, -1.0, 5.0, 0.5].iter().enumerate() {
            a[i * 4 + i] = *x;
        }
        let v = symmetric_eigenvalues(a, 4).unwrap();
        assert!(close(&v, &[5.0, 2.0, 0.5, -1.0], 1e-14));
    }

    #[test]
    fn path_adjacency_matches_cosines() {
        // adjacency spectrum of P_n is 2 cos(k pi / (n + 1))
        let n = 30;
        let mut a = vec![0.0; n * n];
        for i in 1..n {
            a[i * n + i - 1] = 1.0;
            a[(i - 1) * n + i] = 1.0;
        }
        let v = symmetric_eigenvalues(a, n).unwrap();
        let mut expect: Vec<f64> =
            (1..=n).map(|k| 2.0 * (k as f64 * std::f64::consts::PI / (n as f64 + 1.0)).cos()).collect();
        expect.sort_by(|x, y| y.total_cmp(x));
        assert!(close(&v, &expect, 1e-12));
    }

    #[test]
    fn all_ones_matrix() {
        let n = 7;
        let v = symmetric_eigenvalues(vec![1.0; n * n], n).unwrap();
        assert!((v[0] - n as f64).abs() < 1e-12);
        assert!(v[1..].iter().all(|x| x.abs() < 1e-12));
    }
}
