//! Cyclic Jacobi eigenvalues for Hermitian matrices.
//!
//! `H = A + iB` is embedded as the real symmetric `[[A, -B], [B, A]]`, whose
//! spectrum is that of `H` with every eigenvalue doubled.

use num_complex::Complex64;

use crate::error::{Error, Result};

const MAX_SWEEPS: usize = 100;
const REL_OFF_TOL: f64 = 1e-14;

/// Eigenvalues of the Hermitian matrix `entries` (row-major, `n × n`),
/// sorted descending. Only the lower triangle's Hermitian part is trusted.
pub fn hermitian_eigenvalues(n: usize, entries: &[Complex64]) -> Result<Vec<f64>> {
    let m = 2 * n;
    let mut a = vec![0.0; m * m];
    for i in 0..n {
        for j in 0..n {
            let z = entries[i * n + j];
            a[i * m + j] = z.re;
            a[(i + n) * m + (j + n)] = z.re;
            a[i * m + (j + n)] = -z.im;
            a[(i + n) * m + j] = z.im;
        }
    }
    let mut doubled = symmetric_eigenvalues(m, &mut a)?;
    doubled.sort_by(|x, y| y.total_cmp(x));
    Ok(doubled.into_iter().step_by(2).collect())
}

fn off_norm(m: usize, a: &[f64]) -> f64 {
    let mut s = 0.0;
    for i in 0..m {
        for j in 0..m {
            if i != j {
                s += a[i * m + j] * a[i * m + j];
            }
        }
    }
    s.sqrt()
}

/// Cyclic-by-row Jacobi on a real symmetric matrix; destroys `a`.
fn symmetric_eigenvalues(m: usize, a: &mut [f64]) -> Result<Vec<f64>> {
    let frob = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let target = REL_OFF_TOL * frob;
    let mut off = off_norm(m, a);
    let mut sweeps = 0;
    while off > target {
        if sweeps == MAX_SWEEPS {
            return Err(Error::NoConvergence { sweeps, off });
        }
        for p in 0..m {
            for q in p + 1..m {
                let apq = a[p * m + q];
                if apq == 0.0 {
                    continue;
                }
                let app = a[p * m + p];
                let aqq = a[q * m + q];
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..m {
                    let akp = a[k * m + p];
                    let akq = a[k * m + q];
                    a[k * m + p] = c * akp - s * akq;
                    a[k * m + q] = s * akp + c * akq;
                }
                for k in 0..m {
                    let apk = a[p * m + k];
                    let aqk = a[q * m + k];
                    a[p * m + k] = c * apk - s * aqk;
                    a[q * m + k] = s * apk + c * aqk;
                }
                a[p * m + q] = 0.0;
                a[q * m + p] = 0.0;
            }
        }
        sweeps += 1;
        off = off_norm(m, a);
    }
    Ok((0..m).map(|i| a[i * m + i]).collect())
}
