//! Density matrices, their spectra, and the spectrum manipulations every
//! other module is built on: zero padding, tensor products and multiplicity
//! clustering.

mod jacobi;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use jacobi::hermitian_eigenvalues;

/// Asymmetry below which a matrix is treated as Hermitian and symmetrized.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Allowed distance of the trace (and of a spectrum's sum) from one.
pub const TRACE_TOL: f64 = 1e-10;
/// Eigenvalues in `(-PSD_TOL, 0)` are roundoff and clamped to zero.
pub const PSD_TOL: f64 = 1e-10;
/// Default relative gap below which two eigenvalues are one node.
pub const DEFAULT_CLUSTER_TOL: f64 = 1e-9;
/// Eigenvalues below this are merged into an exact zero node.
pub const ZERO_NODE_TOL: f64 = 1e-14;

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim: usize,
    // row-major
    entries: Vec<Complex64>,
    eigenvalues: Vec<f64>,
}

impl DensityMatrix {
    /// Validates a square complex matrix given as rows.
    ///
    /// Matrices whose asymmetry is below [`HERMITIAN_TOL`] are replaced by
    /// `(M + M†)/2` before the trace and positivity checks.
    pub fn validate(rows: &[Vec<Complex64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut entries = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare {
                    rows: n,
                    row: i,
                    len: row.len(),
                });
            }
            for z in row {
                if !z.re.is_finite() || !z.im.is_finite() {
                    return Err(Error::NonFinite(entries.len()));
                }
                entries.push(*z);
            }
        }

        let mut asym = 0.0f64;
        for i in 0..n {
            for j in i..n {
                asym = asym.max((entries[i * n + j] - entries[j * n + i].conj()).norm());
            }
        }
        if asym > HERMITIAN_TOL {
            return Err(Error::NotHermitian(asym));
        }
        for i in 0..n {
            entries[i * n + i] = Complex64::new(entries[i * n + i].re, 0.0);
            for j in i + 1..n {
                let avg = (entries[i * n + j] + entries[j * n + i].conj()) * 0.5;
                entries[i * n + j] = avg;
                entries[j * n + i] = avg.conj();
            }
        }

        let trace: f64 = (0..n).map(|i| entries[i * n + i].re).sum();
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::TraceNotOne(trace));
        }

        let eigenvalues = hermitian_eigenvalues(n, &entries)?;
        let min = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        if min < -PSD_TOL {
            return Err(Error::NotPsd(min));
        }
        Ok(Self {
            dim: n,
            entries,
            eigenvalues,
        })
    }

    /// Builds and validates a matrix from separate real and imaginary parts.
    /// A missing imaginary part means all zeros.
    pub fn from_parts(re: &[Vec<f64>], im: Option<&[Vec<f64>]>) -> Result<Self> {
        let rows = re
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let im_row = im.and_then(|m| m.get(i));
                if let Some(ir) = im_row {
                    if ir.len() != row.len() {
                        return Err(Error::NotSquare {
                            rows: re.len(),
                            row: i,
                            len: ir.len(),
                        });
                    }
                }
                Ok(row
                    .iter()
                    .enumerate()
                    .map(|(j, &x)| Complex64::new(x, im_row.map_or(0.0, |r| r[j])))
                    .collect())
            })
            .collect::<Result<Vec<Vec<Complex64>>>>()?;
        if let Some(m) = im {
            if m.len() != re.len() {
                return Err(Error::NotSquare {
                    rows: re.len(),
                    row: m.len(),
                    len: 0,
                });
            }
        }
        Self::validate(&rows)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> Complex64 {
        self.entries[i * self.dim + j]
    }

    /// The spectrum: clamped to `[0, 1]`, renormalized and sorted descending.
    pub fn eigenvalues(&self) -> Spectrum {
        let clamped: Vec<f64> = self
            .eigenvalues
            .iter()
            .map(|&v| v.clamp(0.0, 1.0))
            .collect();
        Spectrum::new(clamped).expect("validated density matrix has a valid spectrum")
    }
}

/// Eigenvalues of a density matrix: nonnegative, unit sum, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    values: Vec<f64>,
    cluster_tolerance: f64,
}

impl Spectrum {
    /// Validates a probability vector. Values in `(-1e-10, 0)` are clamped to
    /// zero and a sum off by at most `1e-10` is renormalized away.
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyMatrix);
        }
        let mut values = values;
        for (i, v) in values.iter_mut().enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFinite(i));
            }
            if *v < -PSD_TOL {
                return Err(Error::NegativeValue(*v));
            }
            if *v < 0.0 {
                *v = 0.0;
            }
        }
        let sum: f64 = values.iter().sum();
        if (sum - 1.0).abs() > TRACE_TOL {
            return Err(Error::NotNormalized(sum));
        }
        if sum != 1.0 {
            values.iter_mut().for_each(|v| *v /= sum);
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(Self {
            values,
            cluster_tolerance: DEFAULT_CLUSTER_TOL,
        })
    }

    /// `(1/n, …, 1/n)`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        Ok(Self::from_sorted(vec![1.0 / n as f64; n]))
    }

    /// `(1, 0, …, 0)` of dimension `n`.
    pub fn pure(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::EmptyMatrix);
        }
        let mut values = vec![0.0; n];
        values[0] = 1.0;
        Ok(Self::from_sorted(values))
    }

    fn from_sorted(values: Vec<f64>) -> Self {
        Self {
            values,
            cluster_tolerance: DEFAULT_CLUSTER_TOL,
        }
    }

    pub fn with_cluster_tolerance(mut self, tol: f64) -> Self {
        self.cluster_tolerance = tol;
        self
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn cluster_tolerance(&self) -> f64 {
        self.cluster_tolerance
    }

    /// Smallest strictly positive eigenvalue.
    pub fn min_positive(&self) -> Option<f64> {
        self.values.iter().rev().copied().find(|&v| v > 0.0)
    }

    pub fn is_pure(&self) -> bool {
        self.values[0] == 1.0
    }

    /// Appends `m` zero eigenvalues (the spectrum of `ρ ⊕ 0_m`).
    pub fn pad_with_zeros(&self, m: usize) -> Self {
        let mut values = self.values.clone();
        values.resize(values.len() + m, 0.0);
        Self {
            values,
            cluster_tolerance: self.cluster_tolerance,
        }
    }

    /// Spectrum of `ρ_a ⊗ ρ_b`: all pairwise products.
    pub fn tensor(&self, other: &Spectrum) -> Self {
        let mut values: Vec<f64> = self
            .values
            .iter()
            .flat_map(|&a| other.values.iter().map(move |&b| a * b))
            .collect();
        values.sort_by(|a, b| b.total_cmp(a));
        Self {
            values,
            cluster_tolerance: self.cluster_tolerance,
        }
    }

    /// Merges eigenvalues closer than the cluster tolerance into nodes with
    /// multiplicities.
    pub fn cluster(&self) -> ClusteredSpectrum {
        let tol = self.cluster_tolerance;
        let mut nodes: Vec<Node> = Vec::new();
        let mut zeros = 0usize;
        // (sum, count, last member)
        let mut current: Option<(f64, usize, f64)> = None;
        for &v in &self.values {
            if v < ZERO_NODE_TOL {
                zeros += 1;
                continue;
            }
            current = match current {
                Some((sum, count, last)) if last - v < tol * last => Some((sum + v, count + 1, v)),
                Some((sum, count, _)) => {
                    nodes.push(Node {
                        value: sum / count as f64,
                        multiplicity: count,
                    });
                    Some((v, 1, v))
                }
                None => Some((v, 1, v)),
            };
        }
        if let Some((sum, count, _)) = current {
            nodes.push(Node {
                value: sum / count as f64,
                multiplicity: count,
            });
        }
        if zeros > 0 {
            nodes.push(Node {
                value: 0.0,
                multiplicity: zeros,
            });
        }
        ClusteredSpectrum { nodes }
    }
}

/// One distinct eigenvalue and how often it occurs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Node {
    pub value: f64,
    pub multiplicity: usize,
}

/// Distinct eigenvalues with multiplicities, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusteredSpectrum {
    nodes: Vec<Node>,
}

impl ClusteredSpectrum {
    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    /// Total multiplicity, i.e. the dimension of the underlying spectrum.
    pub fn dim(&self) -> usize {
        self.nodes.iter().map(|n| n.multiplicity).sum()
    }

    pub fn zero_multiplicity(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| n.value == 0.0)
            .map(|n| n.multiplicity)
            .sum()
    }
}
