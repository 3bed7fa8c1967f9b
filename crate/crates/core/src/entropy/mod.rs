//! Closed-form entropy, subentropy, the intermediate family `R^{(n)}_r` and
//! the augmentation-invariant interpolants `𝓡_α`. All values are in nats.
//!
//! `R^{(n)}_r = −C(n−1, r−1)⁻¹ Σ_{|K| = r} g_r[λ_K]` where `g_r(x) = x^r ln x`
//! and `g_r[·]` is a divided difference (see [`divided`]). Degenerate
//! eigenvalues are exact confluent limits, never perturbations.

pub mod coefficients;
pub mod divided;

use serde::{Deserialize, Serialize};

use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::spectra::{Node, Spectrum};

pub use coefficients::{
    binomial_coefficients, restricted_coefficients, CoefficientKind, CoefficientTable,
    RestrictedRow,
};
pub use divided::divided_difference;

/// Largest dimension for which the subset enumeration is attempted; the
/// number of terms grows like `C(n, r)`.
pub const SUBSET_CAP: usize = 24;

/// Slack used when checking report invariants.
const REPORT_SLACK: f64 = 1e-10;

fn xlogx(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x * x.ln()
    }
}

/// `S = −Σ λ ln λ`, with `0 ln 0 = 0`.
pub fn von_neumann_entropy(s: &Spectrum) -> f64 {
    -s.values().iter().map(|&x| xlogx(x)).sum::<f64>()
}

/// Subentropy `Q`: minus the divided difference of `x^n ln x` over the
/// whole spectrum. Not subject to [`SUBSET_CAP`].
pub fn subentropy(s: &Spectrum) -> f64 {
    let n = s.dim();
    let nodes: Vec<(f64, usize)> = s
        .cluster()
        .nodes()
        .iter()
        .map(|nd| (nd.value, nd.multiplicity))
        .collect();
    -divided_difference(n, &nodes)
}

/// Calls `visit(counts, weight)` for every way to draw `r` of the eigenvalues
/// (by position) grouped by node: `counts[i]` copies of node `i`, occurring
/// `Π C(m_i, counts[i])` times.
fn for_each_multiset(nodes: &[Node], r: usize, visit: &mut impl FnMut(&[usize], f64)) {
    fn rec(
        nodes: &[Node],
        idx: usize,
        left: usize,
        capacity_after: &[usize],
        counts: &mut Vec<usize>,
        weight: f64,
        visit: &mut impl FnMut(&[usize], f64),
    ) {
        if idx == nodes.len() {
            if left == 0 {
                visit(counts, weight);
            }
            return;
        }
        let m = nodes[idx].multiplicity;
        let lo = left.saturating_sub(capacity_after[idx + 1]);
        for c in lo..=m.min(left) {
            counts.push(c);
            rec(
                nodes,
                idx + 1,
                left - c,
                capacity_after,
                counts,
                weight * binomial(m, c),
                visit,
            );
            counts.pop();
        }
    }
    let mut capacity_after = vec![0usize; nodes.len() + 1];
    for i in (0..nodes.len()).rev() {
        capacity_after[i] = capacity_after[i + 1] + nodes[i].multiplicity;
    }
    rec(
        nodes,
        0,
        r,
        &capacity_after,
        &mut Vec::with_capacity(nodes.len()),
        1.0,
        visit,
    );
}

fn check_r(n: usize, r: usize) -> Result<()> {
    if r == 0 || r > n {
        Err(Error::InvalidR { n, r })
    } else {
        Ok(())
    }
}

/// `R^{(n)}_r` for `1 ≤ r ≤ n`.
///
/// Cost is the number of node multisets of size `r`, at most `C(n, r)`;
/// for `n > 24` and `1 < r < n` this returns [`Error::CapExceeded`].
pub fn intermediate_r(s: &Spectrum, r: usize) -> Result<f64> {
    let n = s.dim();
    check_r(n, r)?;
    if n > SUBSET_CAP && r > 1 && r < n {
        return Err(Error::CapExceeded { n, cap: SUBSET_CAP });
    }
    let clustered = s.cluster();
    let nodes = clustered.nodes();
    let mut total = 0.0;
    let mut picked: Vec<(f64, usize)> = Vec::with_capacity(nodes.len());
    for_each_multiset(nodes, r, &mut |counts, weight| {
        picked.clear();
        picked.extend(
            nodes
                .iter()
                .zip(counts)
                .filter(|(_, &c)| c > 0)
                .map(|(nd, &c)| (nd.value, c)),
        );
        total += weight * divided_difference(r, &picked);
    });
    Ok(-total / binomial(n - 1, r - 1))
}

/// All of `R^{(n)}_1, …, R^{(n)}_n`.
pub fn all_r(s: &Spectrum) -> Result<Vec<f64>> {
    (1..=s.dim()).map(|r| intermediate_r(s, r)).collect()
}

/// Value of `R^{(n)}_r` at the uniform spectrum, its maximum:
/// `ln n − (1/2 + ⋯ + 1/r)` (just `ln n` for `r = 1`).
pub fn max_value_r(n: usize, r: usize) -> Result<f64> {
    check_r(n, r)?;
    Ok((n as f64).ln() - (2..=r).map(|k| 1.0 / k as f64).sum::<f64>())
}

/// Maps `R^{(n)}_1..R^{(n)}_n` of a spectrum to `R^{(n+m)}_1..R^{(n+m)}_{n+m}`
/// of the same spectrum with `m` zeros appended.
pub fn pad_recursion(r_values: &[f64], m: usize) -> Vec<f64> {
    let n = r_values.len();
    (1..=n + m)
        .map(|r| {
            let sum: f64 = (0..r)
                .filter(|&s| r - s <= n)
                .map(|s| binomial(n - 1, r - 1 - s) * binomial(m, s) * r_values[r - s - 1])
                .sum();
            sum / binomial(n + m - 1, r - 1)
        })
        .collect()
}

/// `𝓡_α = Σ_r C(n−1, r−1) α^{r−1} (1−α)^{n−r} R^{(n)}_r`. Terms with zero
/// weight are skipped, so `α ∈ {0, 1}` never hits the subset cap.
pub fn interpolant(s: &Spectrum, alpha: f64) -> Result<f64> {
    let weights = binomial_coefficients(s.dim(), alpha)?;
    let mut total = 0.0;
    for (idx, &b) in weights.iter().enumerate() {
        if b != 0.0 {
            total += b * intermediate_r(s, idx + 1)?;
        }
    }
    Ok(total)
}

/// `𝓡_α` from precomputed `R` values.
pub fn interpolant_from_r(r_values: &[f64], alpha: f64) -> Result<f64> {
    let weights = binomial_coefficients(r_values.len(), alpha)?;
    Ok(weights.iter().zip(r_values).map(|(b, r)| b * r).sum())
}

/// One `(α, 𝓡_α)` sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaSample {
    pub alpha: f64,
    pub value: f64,
}

/// Every closed-form quantity for one spectrum.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntropyReport {
    pub n: usize,
    #[serde(rename = "S")]
    pub entropy: f64,
    #[serde(rename = "Q")]
    pub subentropy: f64,
    /// `r[k] = R^{(n)}_{k+1}`
    #[serde(rename = "R")]
    pub r: Vec<f64>,
    #[serde(rename = "alphaSamples", default)]
    pub alpha_samples: Vec<AlphaSample>,
}

impl EntropyReport {
    fn check(&self) -> Result<()> {
        let n = self.n;
        let ln_n = (n as f64).ln();
        let fail = |msg: String| Err(Error::ReportInvariant(msg));
        if (self.r[0] - self.entropy).abs() > REPORT_SLACK {
            return fail(format!(
                "R_1 = {} differs from S = {}",
                self.r[0], self.entropy
            ));
        }
        if (self.r[n - 1] - self.subentropy).abs() > REPORT_SLACK {
            return fail(format!(
                "R_n = {} differs from Q = {}",
                self.r[n - 1],
                self.subentropy
            ));
        }
        for (k, w) in self.r.windows(2).enumerate() {
            if w[1] > w[0] + REPORT_SLACK {
                return fail(format!(
                    "R_{} = {} exceeds R_{} = {}",
                    k + 2,
                    w[1],
                    k + 1,
                    w[0]
                ));
            }
        }
        let values = self
            .r
            .iter()
            .chain(self.alpha_samples.iter().map(|a| &a.value));
        for &v in values {
            if v < -REPORT_SLACK || v > ln_n + REPORT_SLACK {
                return fail(format!("value {v} outside [0, ln {n}]"));
            }
        }
        Ok(())
    }
}

/// Computes S, Q, all `R^{(n)}_r` and `𝓡_α` on the given grid, then checks
/// the report invariants (endpoints, ordering, range).
pub fn full_report(s: &Spectrum, alpha_grid: Option<&[f64]>) -> Result<EntropyReport> {
    let r = all_r(s)?;
    let alpha_samples = alpha_grid
        .unwrap_or(&[])
        .iter()
        .map(|&alpha| {
            Ok(AlphaSample {
                alpha,
                value: interpolant_from_r(&r, alpha)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let report = EntropyReport {
        n: s.dim(),
        entropy: von_neumann_entropy(s),
        subentropy: subentropy(s),
        r,
        alpha_samples,
    };
    report.check()?;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(von_neumann_entropy(&spec(&[1.0, 0.0])), 0.0);
        assert!((von_neumann_entropy(&spec(&[0.5, 0.5])) - 2f64.ln()).abs() < 1e-15);
        let want = -(0.7f64 * 0.7f64.ln() + 0.3 * 0.3f64.ln());
        assert!((von_neumann_entropy(&spec(&[0.7, 0.3])) - want).abs() < 1e-15);
        assert!((want - 0.6108643).abs() < 1e-7);
    }

    #[test]
    fn subentropy_examples() {
        assert_eq!(subentropy(&spec(&[1.0, 0.0])), 0.0);
        assert!((subentropy(&spec(&[0.5, 0.5])) - (2f64.ln() - 0.5)).abs() < 1e-15);
        // 1.75·(−0.7 ln 0.7) − 0.75·(−0.3 ln 0.3)
        let want = 1.75 * (-0.7 * 0.7f64.ln()) - 0.75 * (-0.3 * 0.3f64.ln());
        assert!((subentropy(&spec(&[0.7, 0.3])) - want).abs() < 1e-15);
        assert!((want - 0.1660330).abs() < 1e-7);
    }

    #[test]
    fn intermediate_examples() {
        let u3 = Spectrum::uniform(3).unwrap();
        assert!((intermediate_r(&u3, 2).unwrap() - (3f64.ln() - 0.5)).abs() < 1e-14);
        let s = spec(&[0.7, 0.3]);
        let padded = spec(&[0.7, 0.3, 0.0]);
        let mid = 0.5 * (von_neumann_entropy(&s) + subentropy(&s));
        assert!((intermediate_r(&padded, 2).unwrap() - mid).abs() < 1e-15);
        let s4 = spec(&[0.4, 0.3, 0.2, 0.1]);
        assert!((intermediate_r(&s4, 1).unwrap() - von_neumann_entropy(&s4)).abs() < 1e-15);
    }

    #[test]
    fn invalid_r() {
        let s = spec(&[0.7, 0.3]);
        assert_eq!(intermediate_r(&s, 0), Err(Error::InvalidR { n: 2, r: 0 }));
        assert_eq!(intermediate_r(&s, 3), Err(Error::InvalidR { n: 2, r: 3 }));
        assert!(max_value_r(2, 3).is_err());
    }

    #[test]
    fn cap_exceeded() {
        let s = Spectrum::uniform(25).unwrap();
        assert_eq!(
            intermediate_r(&s, 3),
            Err(Error::CapExceeded { n: 25, cap: 24 })
        );
        assert!(intermediate_r(&s, 1).is_ok());
        assert!(intermediate_r(&s, 25).is_ok());
        assert!(interpolant(&s, 1.0).is_ok());
    }

    #[test]
    fn max_value_examples() {
        assert_eq!(max_value_r(2, 1).unwrap(), 2f64.ln());
        assert_eq!(max_value_r(2, 2).unwrap(), 2f64.ln() - 0.5);
        assert!((max_value_r(5, 3).unwrap() - (5f64.ln() - 5.0 / 6.0)).abs() < 1e-15);
        assert!((max_value_r(5, 3).unwrap() - 0.7761046).abs() < 1e-7);
    }

    #[test]
    fn pad_recursion_examples() {
        let rv = [0.61, 0.17];
        let out = pad_recursion(&rv, 1);
        assert_eq!(out[0], rv[0]);
        assert!((out[1] - 0.5 * (rv[0] + rv[1])).abs() < 1e-16);
        assert_eq!(out[2], rv[1]);
        let out = pad_recursion(&[1.0, 0.5, 0.2], 3);
        assert_eq!(out.len(), 6);
        assert_eq!(out[0], 1.0);
        assert_eq!(out[5], 0.2);
        assert_eq!(pad_recursion(&rv, 0), rv.to_vec());
    }

    #[test]
    fn interpolant_examples() {
        let s = spec(&[0.7, 0.3]);
        let (sv, qv) = (von_neumann_entropy(&s), subentropy(&s));
        assert!((interpolant(&s, 0.0).unwrap() - sv).abs() <= 1e-12 * sv);
        assert!((interpolant(&s, 1.0).unwrap() - qv).abs() <= 1e-12 * qv);
        assert!((interpolant(&s, 0.5).unwrap() - 0.5 * (sv + qv)).abs() < 1e-15);
        assert_eq!(interpolant(&s, -0.1), Err(Error::AlphaOutOfRange(-0.1)));
    }

    #[test]
    fn report_examples() {
        let pure = full_report(&spec(&[1.0, 0.0, 0.0]), None).unwrap();
        assert_eq!(pure.entropy, 0.0);
        assert!(pure.r.iter().all(|&v| v.abs() < 1e-15));

        let u4 = full_report(&Spectrum::uniform(4).unwrap(), Some(&[0.5])).unwrap();
        for (k, &v) in u4.r.iter().enumerate() {
            assert!((v - max_value_r(4, k + 1).unwrap()).abs() < 1e-10);
        }
        assert_eq!(u4.alpha_samples.len(), 1);

        let q = full_report(&spec(&[0.7, 0.3]), None).unwrap();
        assert_eq!(q.r.len(), 2);
        assert!((q.entropy - 0.6108643).abs() < 1e-7);
        assert!((q.subentropy - 0.1660330).abs() < 1e-7);
    }

    #[test]
    fn multiset_weights_count_all_subsets() {
        let s = spec(&[0.3, 0.3, 0.2, 0.2]);
        let c = s.cluster();
        for r in 1..=4 {
            let mut total = 0.0;
            for_each_multiset(c.nodes(), r, &mut |_, w| total += w);
            assert_eq!(total, binomial(4, r));
        }
    }
}
