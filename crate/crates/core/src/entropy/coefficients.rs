//! Weights `b^{(n)}_r` for convex combinations of the `R^{(n)}_r` that are
//! unchanged when zero eigenvalues are appended.
//!
//! A table is admissible when every row is a probability vector and adjacent
//! rows satisfy `(n − r + 1) b^{(n+1)}_r + r b^{(n+1)}_{r+1} = n b^{(n)}_r`.

use serde::{Deserialize, Serialize};

use crate::combinatorics::{binomial, binomial_u128};
use crate::error::{Error, Result};

/// Binomial weights `C(n−1, r−1) α^{r−1} (1−α)^{n−r}`, `r = 1..=n`: the
/// extreme invariant solutions.
pub fn binomial_coefficients(n: usize, alpha: f64) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidIndex("n must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let beta = 1.0 - alpha;
    Ok((1..=n)
        .map(|r| binomial(n - 1, r - 1) * alpha.powi((r - 1) as i32) * beta.powi((n - r) as i32))
        .collect())
}

/// One row of the restricted-problem solution in exact arithmetic.
///
/// Every row of the table generated by `(N, r̂)` shares the denominator
/// `C(N−1, r̂−1)`, so a row is stored as integer numerators over it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RestrictedRow {
    pub numerators: Vec<u128>,
    pub denominator: u128,
}

impl RestrictedRow {
    pub fn to_f64(&self) -> Vec<f64> {
        self.numerators
            .iter()
            .map(|&a| a as f64 / self.denominator as f64)
            .collect()
    }
}

/// `b^{(n)}_r = C(n−1, r−1) C(N−n, r̂−r) / C(N−1, r̂−1)`: the solution of the
/// problem restricted to `n ≤ N` that puts all weight on `r̂` at level `N`.
pub fn restricted_coefficients(big_n: usize, r_hat: usize, n: usize) -> Result<RestrictedRow> {
    if big_n == 0 || !(1..=big_n).contains(&r_hat) || !(1..=big_n).contains(&n) {
        return Err(Error::InvalidIndex(format!(
            "need 1 <= rHat <= N and 1 <= n <= N, got N={big_n}, rHat={r_hat}, n={n}"
        )));
    }
    let overflow = || Error::InvalidIndex(format!("N = {big_n} overflows exact arithmetic"));
    let denominator = binomial_u128(big_n - 1, r_hat - 1).ok_or_else(overflow)?;
    let numerators = (1..=n)
        .map(|r| {
            if r > r_hat {
                return Ok(0);
            }
            let a = binomial_u128(n - 1, r - 1).ok_or_else(overflow)?;
            let b = binomial_u128(big_n - n, r_hat - r).ok_or_else(overflow)?;
            a.checked_mul(b).ok_or_else(overflow)
        })
        .collect::<Result<Vec<u128>>>()?;
    Ok(RestrictedRow {
        numerators,
        denominator,
    })
}

/// Which family of solutions a table holds.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CoefficientKind {
    Binomial { alpha: f64 },
    Restricted { big_n: usize, r_hat: usize },
}

/// Rows `n = 1..=max_n` of invariance weights.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoefficientTable {
    pub kind: CoefficientKind,
    /// `rows[n-1][r-1] = b^{(n)}_r`
    pub rows: Vec<Vec<f64>>,
    /// Exact rows, present for restricted tables.
    pub exact: Option<Vec<RestrictedRow>>,
}

impl CoefficientTable {
    pub fn binomial(alpha: f64, max_n: usize) -> Result<Self> {
        let rows = (1..=max_n)
            .map(|n| binomial_coefficients(n, alpha))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            kind: CoefficientKind::Binomial { alpha },
            rows,
            exact: None,
        })
    }

    pub fn restricted(big_n: usize, r_hat: usize) -> Result<Self> {
        let exact = (1..=big_n)
            .map(|n| restricted_coefficients(big_n, r_hat, n))
            .collect::<Result<Vec<_>>>()?;
        let rows = exact.iter().map(RestrictedRow::to_f64).collect();
        Ok(Self {
            kind: CoefficientKind::Restricted { big_n, r_hat },
            rows,
            exact: Some(exact),
        })
    }

    /// Largest violation of the recursion, nonnegativity and normalization
    /// over all stored rows, in floating point.
    pub fn max_violation(&self) -> f64 {
        let mut worst = 0.0f64;
        for (idx, row) in self.rows.iter().enumerate() {
            let n = idx + 1;
            worst = worst.max((row.iter().sum::<f64>() - 1.0).abs());
            for &b in row {
                worst = worst.max(-b);
            }
            if let Some(next) = self.rows.get(idx + 1) {
                for r in 1..=n {
                    let lhs = (n - r + 1) as f64 * next[r - 1] + r as f64 * next[r];
                    worst = worst.max((lhs - n as f64 * row[r - 1]).abs());
                }
            }
        }
        worst
    }

    /// Exact check of recursion and normalization for restricted tables;
    /// `None` for binomial tables.
    pub fn exact_laws_hold(&self) -> Option<bool> {
        let exact = self.exact.as_ref()?;
        let ok = exact.iter().enumerate().all(|(idx, row)| {
            let n = idx + 1;
            let normalized = row.numerators.iter().sum::<u128>() == row.denominator;
            let recursion = exact.get(idx + 1).is_none_or(|next| {
                (1..=n).all(|r| {
                    let lhs = (n - r + 1) as u128 * next.numerators[r - 1]
                        + r as u128 * next.numerators[r];
                    lhs == n as u128 * row.numerators[r - 1]
                })
            });
            normalized && recursion
        });
        Some(ok)
    }
}
