use num_complex::Complex64;

/// All elementary symmetric polynomials `e_0..e_n` of `values`, from the
/// coefficients of `Π (1 + t ν_i)`.
pub fn elementary_symmetric(values: &[Complex64]) -> Vec<Complex64> {
    let mut e = vec![Complex64::new(0.0, 0.0); values.len() + 1];
    e[0] = Complex64::new(1.0, 0.0);
    for (i, &v) in values.iter().enumerate() {
        for k in (1..=i + 1).rev() {
            let prev = e[k - 1];
            e[k] += v * prev;
        }
    }
    e
}

/// `C_r`: the sum of all products of `r` distinct entries of `values`
/// (`C_1` is the sum, `C_n` the product). Zero for `r > n`.
pub fn symmetric_coefficient(values: &[Complex64], r: usize) -> Complex64 {
    elementary_symmetric(values)
        .get(r)
        .copied()
        .unwrap_or(Complex64::new(0.0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn examples() {
        assert_eq!(symmetric_coefficient(&c(&[2.0, 5.0]), 2).re, 10.0);
        assert_eq!(symmetric_coefficient(&c(&[1.0, 1.0, 1.0]), 2).re, 3.0);
        assert_eq!(symmetric_coefficient(&c(&[2.0, 3.0, 4.0]), 2).re, 26.0);
        assert_eq!(symmetric_coefficient(&c(&[2.0, 3.0, 4.0]), 1).re, 9.0);
        assert_eq!(symmetric_coefficient(&c(&[2.0, 3.0, 4.0]), 3).re, 24.0);
    }

    #[test]
    fn complex_product() {
        let i = Complex64::i();
        assert_eq!(symmetric_coefficient(&[i, i], 2), Complex64::new(-1.0, 0.0));
    }
}
