//! Trapezoidal quadrature of
//!
//! `R_r = −C(n−1, r−1)⁻¹ (1/2πi) ∮ ln z · C_r[(I − ρ/z)⁻¹] dz` and
//! `𝓡_α = −(1/2πiα) ∮ ln z · Π_i [(1−α) + α z/(z − λ_i)] dz`.
//!
//! The integral is taken in the variable `w = ln z`, where it reads
//! `∮ w · F(e^w) e^w dw`. In that plane the integrand has no branch cut, only
//! poles at `ln λ_i` (and their `2πi` translates), so the contour is an ellipse
//! around the real segment `[ln λ_min⁺, ln λ_max]` with foci at its ends. Its
//! image under `exp` is a closed curve enclosing every nonzero eigenvalue
//! whose leftmost point is `marginFactor · λ_min⁺`. The trapezoid rule on the
//! ellipse converges geometrically, at a rate that degrades only
//! logarithmically with the eigenvalue spread.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::symmetric::elementary_symmetric;
use super::{OracleEstimate, OracleMethod};
use crate::combinatorics::binomial;
use crate::error::{Error, Result};
use crate::spectra::Spectrum;

/// Upper bound on the ellipse's imaginary semi-axis; below π the image curve
/// never touches the negative real axis and no `2πi` translate is enclosed.
const MAX_SEMI_MINOR: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ContourConfig {
    /// Quadrature nodes.
    pub nodes: usize,
    /// Leftmost point of the contour as a fraction of the smallest nonzero
    /// eigenvalue, in `(0, 1)`.
    pub margin_factor: f64,
}

impl Default for ContourConfig {
    fn default() -> Self {
        Self {
            nodes: 512,
            margin_factor: 0.5,
        }
    }
}

impl ContourConfig {
    pub fn with_nodes(nodes: usize) -> Self {
        Self {
            nodes,
            ..Self::default()
        }
    }
}

struct Ellipse {
    center: f64,
    semi_major: f64,
    semi_minor: f64,
}

impl Ellipse {
    fn around(s: &Spectrum, cfg: &ContourConfig) -> Result<Self> {
        if cfg.nodes < 2 || !(cfg.margin_factor > 0.0 && cfg.margin_factor < 1.0) {
            return Err(Error::InvalidIndex(format!(
                "contour needs nodes >= 2 and 0 < marginFactor < 1, got {cfg:?}"
            )));
        }
        let lo = s.min_positive().ok_or(Error::DegenerateContour)?.ln();
        let hi = s.values()[0].ln();
        let half = 0.5 * (hi - lo);
        let semi_major = half - cfg.margin_factor.ln();
        let semi_minor = (semi_major * semi_major - half * half)
            .sqrt()
            .min(MAX_SEMI_MINOR);
        Ok(Self {
            center: 0.5 * (lo + hi),
            semi_major,
            semi_minor,
        })
    }

    /// `−(1/2πi) ∮ w · f(e^w) e^w dw` by the trapezoid rule in the angle.
    fn integrate(&self, nodes: usize, mut f: impl FnMut(Complex64) -> Complex64) -> f64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for k in 0..nodes {
            let theta = 2.0 * PI * k as f64 / nodes as f64;
            let (sin, cos) = theta.sin_cos();
            let w = Complex64::new(self.center + self.semi_major * cos, self.semi_minor * sin);
            let dw = Complex64::new(-self.semi_major * sin, self.semi_minor * cos);
            let z = w.exp();
            acc += w * f(z) * z * dw;
        }
        // −(1/2πi)(2π/N) Σ = (i/N) Σ
        (acc * Complex64::i()).re / nodes as f64
    }
}

/// `z/(z − λ)` for every nonzero eigenvalue.
fn resolvent_eigenvalues(nonzero: &[f64], z: Complex64) -> impl Iterator<Item = Complex64> + '_ {
    let inv = z.inv();
    nonzero
        .iter()
        .map(move |&l| (Complex64::new(1.0, 0.0) - inv * l).inv())
}

/// `R^{(n)}_r` by quadrature. Zero eigenvalues enter `C_r` as resolvent
/// eigenvalues equal to one.
pub fn contour_r(s: &Spectrum, r: usize, cfg: &ContourConfig) -> Result<OracleEstimate> {
    let n = s.dim();
    if r == 0 || r > n {
        return Err(Error::InvalidR { n, r });
    }
    let ellipse = Ellipse::around(s, cfg)?;
    let nonzero: Vec<f64> = s.values().iter().copied().filter(|&v| v > 0.0).collect();
    let zeros = n - nonzero.len();
    // e_r(u ∪ {1}^zeros) = Σ_j C(zeros, j) e_{r−j}(u)
    let pad: Vec<f64> = (0..=r).map(|j| binomial(zeros, j)).collect();
    let integral = ellipse.integrate(cfg.nodes, |z| {
        let u: Vec<Complex64> = resolvent_eigenvalues(&nonzero, z).collect();
        let e = elementary_symmetric(&u);
        (0..=r)
            .filter(|&j| r - j < e.len())
            .map(|j| e[r - j] * pad[j])
            .sum()
    });
    Ok(OracleEstimate {
        value: integral / binomial(n - 1, r - 1),
        stderr: 0.0,
        samples: cfg.nodes,
        method: OracleMethod::Contour,
    })
}

/// `𝓡_α` for `α ∈ (0, 1]` by quadrature of the determinant form. Zero
/// eigenvalues contribute a factor of one and are dropped; `α = 0` is the
/// entropy and belongs to [`contour_r`] with `r = 1`.
pub fn contour_interpolant(
    s: &Spectrum,
    alpha: f64,
    cfg: &ContourConfig,
) -> Result<OracleEstimate> {
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::AlphaOutOfRange(alpha));
    }
    let ellipse = Ellipse::around(s, cfg)?;
    let nonzero: Vec<f64> = s.values().iter().copied().filter(|&v| v > 0.0).collect();
    let beta = Complex64::new(1.0 - alpha, 0.0);
    let integral = ellipse.integrate(cfg.nodes, |z| {
        resolvent_eigenvalues(&nonzero, z)
            .map(|u| beta + u * alpha)
            .product()
    });
    Ok(OracleEstimate {
        value: integral / alpha,
        stderr: 0.0,
        samples: cfg.nodes,
        method: OracleMethod::Contour,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[f64]) -> Spectrum {
        Spectrum::new(v.to_vec()).unwrap()
    }

    const S_07: f64 = 0.6108643020548935;
    const Q_07: f64 = 0.16603292535161163;

    #[test]
    fn qubit_endpoints() {
        let cfg = ContourConfig::default();
        let s = spec(&[0.7, 0.3]);
        assert!((contour_r(&s, 1, &cfg).unwrap().value - S_07).abs() < 1e-10);
        assert!((contour_r(&s, 2, &cfg).unwrap().value - Q_07).abs() < 1e-10);
    }

    #[test]
    fn degenerate_needs_no_special_case() {
        let s = spec(&[0.5, 0.5]);
        let got = contour_r(&s, 2, &ContourConfig::default()).unwrap().value;
        assert!((got - (2f64.ln() - 0.5)).abs() < 1e-12);
    }

    #[test]
    fn interpolant_examples() {
        let cfg = ContourConfig::default();
        let s = spec(&[0.7, 0.3]);
        assert!((contour_interpolant(&s, 1.0, &cfg).unwrap().value - Q_07).abs() < 1e-10);
        let padded = s.pad_with_zeros(2);
        assert!((contour_interpolant(&padded, 1.0, &cfg).unwrap().value - Q_07).abs() < 1e-10);
        let mid = 0.5 * (S_07 + Q_07);
        assert!((contour_interpolant(&s, 0.5, &cfg).unwrap().value - mid).abs() < 1e-10);
        assert!(contour_interpolant(&s, 0.0, &cfg).is_err());
    }

    #[test]
    fn padded_middle_value() {
        // R^{(3)}_2 of (0.7, 0.3, 0) is (S + Q)/2
        let s = spec(&[0.7, 0.3, 0.0]);
        let got = contour_r(&s, 2, &ContourConfig::default()).unwrap().value;
        assert!((got - 0.5 * (S_07 + Q_07)).abs() < 1e-10);
    }

    #[test]
    fn pure_state_is_zero() {
        let got = contour_r(&spec(&[1.0, 0.0, 0.0]), 2, &ContourConfig::default()).unwrap();
        assert!(got.value.abs() < 1e-14);
    }
}
