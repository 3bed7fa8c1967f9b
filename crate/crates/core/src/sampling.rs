//! Random number streams and the samplers shared by the Monte Carlo
//! oracles and the property suites.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! a 64-bit seed. Work is cut into fixed-size chunks and chunk `j` draws from
//! stream `j` of the seed, so results do not depend on how chunks are
//! scheduled and are identical on every platform.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::spectra::Spectrum;

/// Samples per independent substream.
pub const CHUNK: usize = 1 << 14;

/// Generator for substream `stream` of `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Running mean and variance (Welford), mergeable in a fixed order.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct Moments {
    pub count: usize,
    pub mean: f64,
    m2: f64,
}

impl Moments {
    pub fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    pub fn merge(&mut self, other: &Moments) {
        if other.count == 0 {
            return;
        }
        let total = self.count + other.count;
        let delta = other.mean - self.mean;
        self.mean += delta * other.count as f64 / total as f64;
        self.m2 +=
            other.m2 + delta * delta * (self.count as f64 * other.count as f64) / total as f64;
        self.count = total;
    }

    /// Unbiased sample variance.
    pub fn variance(&self) -> f64 {
        if self.count < 2 {
            0.0
        } else {
            self.m2 / (self.count - 1) as f64
        }
    }

    pub fn std_error(&self) -> f64 {
        (self.variance() / self.count as f64).sqrt()
    }
}

/// Runs `per_sample` over `samples` draws in seeded chunks and merges the
/// moments in chunk order.
pub fn chunked_moments(
    samples: usize,
    seed: u64,
    mut per_sample: impl FnMut(&mut ChaCha8Rng) -> f64,
) -> Moments {
    let mut total = Moments::default();
    let chunks = samples.div_ceil(CHUNK);
    for j in 0..chunks {
        let mut rng = stream_rng(seed, j as u64);
        let len = CHUNK.min(samples - j * CHUNK);
        let mut m = Moments::default();
        for _ in 0..len {
            m.push(per_sample(&mut rng));
        }
        total.merge(&m);
    }
    total
}

/// Fills `out` with a uniform point of the probability simplex
/// (normalized exponential variates).
pub fn flat_dirichlet_into<R: Rng + ?Sized>(rng: &mut R, out: &mut [f64]) {
    let mut sum = 0.0;
    for x in out.iter_mut() {
        *x = rng.sample::<f64, _>(Exp1);
        sum += *x;
    }
    out.iter_mut().for_each(|x| *x /= sum);
}

/// A spectrum drawn uniformly from the simplex.
pub fn flat_dirichlet_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Spectrum {
    let mut v = vec![0.0; n];
    flat_dirichlet_into(rng, &mut v);
    Spectrum::new(v).expect("normalized exponentials form a valid spectrum")
}

/// A flat-Dirichlet spectrum with two entries forced within `1e-7` of each
/// other (or exactly equal), to exercise the confluent code paths.
pub fn near_degenerate_spectrum<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Spectrum {
    let mut v = vec![0.0; n];
    flat_dirichlet_into(rng, &mut v);
    if n >= 2 {
        let avg = 0.5 * (v[0] + v[1]);
        let delta = if rng.random_bool(0.5) {
            0.0
        } else {
            rng.random::<f64>() * 1e-7
        };
        let delta = delta.min(avg);
        v[0] = avg + 0.5 * delta;
        v[1] = avg - 0.5 * delta;
    }
    Spectrum::new(v).expect("rebalanced spectrum stays normalized")
}

/// Standard complex normal: real and imaginary parts `N(0, 1/2)`.
pub fn complex_normal<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed `n × n` unitary, column-major (`u[k*n + i]` is entry
/// `(i, k)`).
///
/// Gram–Schmidt on a complex Gaussian matrix. Each column is divided by its
/// positive norm, which is the QR factorization with a positive real
/// diagonal in `R`; that phase convention is what makes `Q` Haar. A QR that
/// leaves arbitrary phases on `diag(R)` would need `Q · diag(R_kk/|R_kk|)`.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Complex64> {
    let mut u: Vec<Complex64> = (0..n * n).map(|_| complex_normal(rng)).collect();
    for k in 0..n {
        // two passes of modified Gram–Schmidt keep the columns orthonormal to
        // working precision
        for _ in 0..2 {
            for j in 0..k {
                let proj: Complex64 = (0..n).map(|i| u[j * n + i].conj() * u[k * n + i]).sum();
                for i in 0..n {
                    let sub = proj * u[j * n + i];
                    u[k * n + i] -= sub;
                }
            }
        }
        let norm = (0..n).map(|i| u[k * n + i].norm_sqr()).sum::<f64>().sqrt();
        for i in 0..n {
            u[k * n + i] /= norm;
        }
    }
    u
}
