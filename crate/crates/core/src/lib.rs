//! Entropy, subentropy and the family of quantities between them.
//!
//! For a density matrix with eigenvalues `λ_1, …, λ_n` this crate computes
//!
//! - the von Neumann entropy `S = −Σ λ ln λ`,
//! - the subentropy `Q`,
//! - the intermediate quantities `R^{(n)}_r`, `r = 1..=n`, obtained by putting
//!   the `r`-th characteristic-polynomial coefficient of `(I − ρ/z)^{-1}` in
//!   place of the trace (`S`) or determinant (`Q`) in the contour-integral
//!   form, so that `Q = R_n ≤ ⋯ ≤ R_1 = S`,
//! - the interpolants `𝓡_α`, binomial averages of the `R_r` that do not change
//!   when zero eigenvalues are appended.
//!
//! Closed forms live in [`entropy`]; [`oracles`] evaluates the same numbers
//! three independent ways (contour quadrature, Monte Carlo over simplex
//! faces, Monte Carlo over random measurements) and [`verify`] packages the
//! known properties as runnable checks.
//!
//! ```
//! use subentropy::{entropy, Spectrum};
//!
//! let s = Spectrum::new(vec![0.7, 0.3]).unwrap();
//! let report = entropy::full_report(&s, Some(&[0.5])).unwrap();
//! assert!((report.entropy - 0.6108643).abs() < 1e-7);
//! assert!((report.subentropy - 0.1660330).abs() < 1e-7);
//!
//! // Q is not additive over tensor products, S is.
//! let half = Spectrum::uniform(2).unwrap();
//! let both = half.tensor(&half);
//! assert!((entropy::subentropy(&both) - 2.0 * entropy::subentropy(&half)).abs() > 1e-3);
//! ```

#![forbid(unsafe_code)]

mod combinatorics;
pub mod entropy;
pub mod error;
pub mod oracles;
pub mod sampling;
pub mod spectra;
pub mod verify;

pub use entropy::{CoefficientTable, EntropyReport};
pub use error::{Error, Result};
pub use oracles::{ContourConfig, OracleEstimate, OracleMethod};
pub use spectra::{ClusteredSpectrum, DensityMatrix, Node, Spectrum};
pub use verify::PropertyVerdict;
