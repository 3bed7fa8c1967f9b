//! Monte Carlo over the faces of the probability simplex.
//!
//! `R^{(n)}_r = n · E[f(x)]` where the face (an `r`-subset of coordinates) is
//! uniform among the `C(n, r)` faces, `x` is uniform on that face, and
//! `f(x) = −(Σλ_i x_i) ln(Σλ_i x_i) + Σ λ_i x_i ln x_i`.

use rand::Rng;

use super::{OracleEstimate, OracleMethod, MIN_SAMPLES};
use crate::error::{Error, Result};
use crate::sampling::chunked_moments;
use crate::spectra::Spectrum;

fn xlogx(x: f64) -> f64 {
    if x > 0.0 {
        x * x.ln()
    } else {
        0.0
    }
}

pub fn simplex_mc(s: &Spectrum, r: usize, samples: usize, seed: u64) -> Result<OracleEstimate> {
    let n = s.dim();
    if r == 0 || r > n {
        return Err(Error::InvalidR { n, r });
    }
    if samples < MIN_SAMPLES {
        return Err(Error::TooFewSamples {
            min: MIN_SAMPLES,
            got: samples,
        });
    }
    let lambda = s.values();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut x = vec![0.0; r];
    let moments = chunked_moments(samples, seed, |rng| {
        // partial Fisher–Yates: perm[..r] is a uniform r-subset
        for i in 0..r {
            let j = rng.random_range(i..n);
            perm.swap(i, j);
        }
        crate::sampling::flat_dirichlet_into(rng, &mut x);
        let mut mix = 0.0;
        let mut own = 0.0;
        for (&k, &xk) in perm[..r].iter().zip(&x) {
            mix += lambda[k] * xk;
            own += lambda[k] * xlogx(xk);
        }
        own - xlogx(mix)
    });
    let scale = n as f64;
    Ok(OracleEstimate {
        value: scale * moments.mean,
        stderr: scale * moments.std_error(),
        samples,
        method: OracleMethod::SimplexMc,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vertices_give_entropy() {
        let s = Spectrum::new(vec![0.5, 0.3, 0.2]).unwrap();
        let est = simplex_mc(&s, 1, 30000, 1).unwrap();
        let entropy = crate::entropy::von_neumann_entropy(&s);
        assert!(est.within_sigmas(entropy, 4.0), "{est:?} vs {entropy}");
    }

    #[test]
    fn deterministic_for_a_seed() {
        let s = Spectrum::new(vec![0.6, 0.4]).unwrap();
        let a = simplex_mc(&s, 2, 50000, 9).unwrap();
        let b = simplex_mc(&s, 2, 50000, 9).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        assert_ne!(a.value, simplex_mc(&s, 2, 50000, 10).unwrap().value);
    }

    #[test]
    fn rejects_small_runs() {
        let s = Spectrum::uniform(2).unwrap();
        assert_eq!(
            simplex_mc(&s, 1, 10, 0),
            Err(Error::TooFewSamples { min: 100, got: 10 })
        );
    }
}
