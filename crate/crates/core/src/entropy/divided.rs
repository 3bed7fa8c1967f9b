//! Divided differences of `g_r(x) = x^r ln x`, including confluent nodes.
//!
//! The inner sum over `s` in the subset form of `R_r`,
//! `Σ_s Π_{t≠s} λ_s/(λ_s − λ_t) · λ_s ln λ_s`, is exactly `g_r[λ_{k_1}, …, λ_{k_r}]`.
//! Repeated nodes turn into derivatives, and near-repeated nodes are where the
//! textbook recursion loses everything to cancellation, so table entries
//! whose nodes sit in a tight cluster are evaluated from a Taylor expansion
//! about the cluster midpoint instead:
//!
//! `g[x_0..x_k] = Σ_{j≥k} g^{(j)}(c)/j! · h_{j−k}(x_0 − c, …, x_k − c)`
//!
//! with `h_m` the complete homogeneous symmetric polynomial of degree `m`.

/// Relative span (`(max − min)/midpoint`) up to which an entry is expanded
/// about its midpoint. Keeps the expansion ratio at or below 0.2.
const TAYLOR_SPAN: f64 = 0.4;
/// Number of Taylor terms; 0.2^60 times the largest `h_m` growth is far
/// below double precision for any table this crate builds.
const TAYLOR_TERMS: usize = 60;

/// Harmonic number `H_k`.
fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}

fn binomial(n: usize, k: usize) -> f64 {
    crate::combinatorics::binomial(n, k)
}

/// `g_r^{(k)}(x) / k!` for `g_r(x) = x^r ln x`.
///
/// For `k ≤ r` this is `C(r,k) x^{r−k} (ln x + H_r − H_{r−k})`; above `r`
/// only the pole of `ln` survives. At `x = 0` every order below `r` vanishes
/// in the limit and higher orders diverge.
pub fn scaled_derivative(r: usize, k: usize, x: f64) -> f64 {
    if x == 0.0 {
        return if k < r {
            0.0
        } else if k == r {
            f64::NEG_INFINITY
        } else {
            f64::NAN
        };
    }
    if k <= r {
        binomial(r, k) * x.powi((r - k) as i32) * (x.ln() + harmonic(r) - harmonic(r - k))
    } else {
        let mut a = 1.0 / ((r + 1) as f64 * x);
        for j in r + 1..k {
            a *= -((j - r) as f64) / ((j + 1) as f64 * x);
        }
        a
    }
}

/// Taylor-series divided difference over `points` (all positive, clustered).
fn taylor_divided_difference(r: usize, points: &[f64]) -> f64 {
    let k = points.len() - 1;
    let lo = points.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = points.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let c = 0.5 * (lo + hi);

    // h[m] = h_m(d_0, …, d_k) for m < TAYLOR_TERMS
    let mut h = [0.0f64; TAYLOR_TERMS];
    h[0] = 1.0;
    for &x in points {
        let d = x - c;
        for m in 1..TAYLOR_TERMS {
            h[m] += d * h[m - 1];
        }
    }

    let mut sum = 0.0;
    let mut coeff = 0.0;
    for (m, hm) in h.iter().enumerate().take(TAYLOR_TERMS) {
        let j = k + m;
        coeff = if j <= r + 1 {
            scaled_derivative(r, j, c)
        } else {
            coeff * (-((j - 1 - r) as f64) / (j as f64 * c))
        };
        sum += coeff * hm;
    }
    sum
}

/// Divided difference `g_r[z_0, …, z_k]` for nodes given as
/// `(value, multiplicity)` pairs with distinct values.
///
/// Nodes at zero are supported as long as the derivative order they require
/// stays below `r`, which always holds when the total multiplicity is at
/// most `r`.
pub fn divided_difference(r: usize, nodes: &[(f64, usize)]) -> f64 {
    let mut z: Vec<f64> = nodes
        .iter()
        .flat_map(|&(v, m)| std::iter::repeat_n(v, m))
        .collect();
    assert!(!z.is_empty(), "divided difference needs at least one node");
    z.sort_by(|a, b| a.total_cmp(b));
    let p = z.len();

    // table[i] holds g[z_i..z_{i+len}] for the current len
    let mut table: Vec<f64> = z.iter().map(|&x| scaled_derivative(r, 0, x)).collect();
    for len in 1..p {
        for i in 0..p - len {
            let (a, b) = (z[i], z[i + len]);
            table[i] = if a == b {
                scaled_derivative(r, len, a)
            } else if a > 0.0 && (b - a) <= TAYLOR_SPAN * 0.5 * (a + b) {
                taylor_divided_difference(r, &z[i..=i + len])
            } else {
                (table[i + 1] - table[i]) / (b - a)
            };
        }
    }
    table[0]
}
