//! Average information from random complete orthogonal measurements.
//!
//! The ensemble is the eigenbasis of `ρ = diag(λ)`: state `|i⟩` with
//! probability `λ_i`. Each sample measures in a Haar-random basis `{e_k}` and
//! records the mutual information between `i` and the outcome `k`, with
//! `p(k|i) = |⟨e_k|i⟩|²`. The mean over bases converges to `Q`. Only the
//! eigenensemble is sampled.

use super::{OracleEstimate, OracleMethod, MIN_SAMPLES};
use crate::error::{Error, Result};
use crate::sampling::{chunked_moments, haar_unitary};
use crate::spectra::Spectrum;

/// Estimate plus the range of per-sample information values seen.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HaarRun {
    pub estimate: OracleEstimate,
    pub min_info: f64,
    pub max_info: f64,
}

/// Mutual information in nats for one measurement basis `u` (column `k` is
/// `e_k`, column-major). Not clamped, so roundoff stays visible in
/// [`HaarRun::min_info`].
fn information(lambda: &[f64], u: &[num_complex::Complex64], p_out: &mut [f64]) -> f64 {
    let n = lambda.len();
    for (k, pk) in p_out.iter_mut().enumerate() {
        *pk = (0..n).map(|i| lambda[i] * u[k * n + i].norm_sqr()).sum();
    }
    let mut info = 0.0;
    for (i, &li) in lambda.iter().enumerate() {
        if li == 0.0 {
            continue;
        }
        for (k, &pk) in p_out.iter().enumerate() {
            let cond = u[k * n + i].norm_sqr();
            if cond > 0.0 {
                info += li * cond * (cond / pk).ln();
            }
        }
    }
    info
}

pub fn haar_run(s: &Spectrum, samples: usize, seed: u64) -> Result<HaarRun> {
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples,
        });
    }
    let lambda = s.values();
    let n = lambda.len();
    let mut p_out = vec![0.0; n];
    let (mut min_info, mut max_info) = (f64::INFINITY, f64::NEG_INFINITY);
    let moments = chunked_moments(samples, seed, |rng| {
        let u = haar_unitary(rng, n);
        let info = information(lambda, &u, &mut p_out);
        min_info = min_info.min(info);
        max_info = max_info.max(info);
        info
    });
    Ok(HaarRun {
        estimate: OracleEstimate {
            value: moments.mean,
            stderr: moments.std_error(),
            samples,
            method: OracleMethod::HaarMc,
        },
        min_info,
        max_info,
    })
}

pub fn haar_average_information(s: &Spectrum, samples: usize, seed: u64) -> Result<OracleEstimate> {
    haar_run(s, samples, seed).map(|run| run.estimate)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_state_gives_nothing() {
        let s = Spectrum::pure(2).unwrap();
        let run = haar_run(&s, 1000, 3).unwrap();
        assert_eq!(run.max_info, 0.0);
        assert_eq!(run.estimate.value, 0.0);
    }

    #[test]
    fn computational_basis_recovers_entropy() {
        let lambda = [0.7, 0.3];
        let one = num_complex::Complex64::new(1.0, 0.0);
        let zero = num_complex::Complex64::new(0.0, 0.0);
        let u = [one, zero, zero, one];
        let got = information(&lambda, &u, &mut [0.0; 2]);
        let s = -(0.7f64 * 0.7f64.ln() + 0.3 * 0.3f64.ln());
        assert!((got - s).abs() < 1e-15);
    }

    #[test]
    fn reproducible() {
        let s = Spectrum::new(vec![0.5, 0.5]).unwrap();
        let a = haar_average_information(&s, 5000, 7).unwrap();
        let b = haar_average_information(&s, 5000, 7).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
