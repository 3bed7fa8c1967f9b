//! Independent numerical routes to the closed-form quantities.
//!
//! - [`contour`]: trapezoidal quadrature of the contour integrals,
//! - [`simplex`]: Monte Carlo over faces of the probability simplex,
//! - [`haar`]: Monte Carlo average of the information gained by random
//!   complete orthogonal measurements, which converges to `Q`.

pub mod contour;
pub mod haar;
pub mod simplex;
pub mod symmetric;

use serde::{Deserialize, Serialize};

pub use contour::{contour_interpolant, contour_r, ContourConfig};
pub use haar::{haar_average_information, haar_run, HaarRun};
pub use simplex::simplex_mc;
pub use symmetric::symmetric_coefficient;

/// Smallest Monte Carlo run accepted.
pub const MIN_SAMPLES: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub enum OracleMethod {
    Contour,
    SimplexMc,
    HaarMc,
}

/// An oracle value with its standard error (zero for quadrature).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OracleEstimate {
    pub value: f64,
    pub stderr: f64,
    pub samples: usize,
    pub method: OracleMethod,
}

impl OracleEstimate {
    /// `|value − reference| / stderr`; infinite for a deterministic miss.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = (self.value - reference).abs();
        if self.stderr > 0.0 {
            diff / self.stderr
        } else if diff == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    }

    pub fn within_sigmas(&self, reference: f64, k: f64) -> bool {
        self.z_score(reference) <= k
    }
}
