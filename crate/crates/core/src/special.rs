//! Log-gamma, binomial coefficients and falling-factorial ratios.

use crate::scalar::Scalar;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Below this size binomial coefficients are formed by a running product,
/// above it through log-gamma.
const LOG_SPACE_THRESHOLD: usize = 60;

/// Natural logarithm of the gamma function for `x > 0`.
pub fn ln_gamma<T: Scalar>(x: T) -> T {
    let half = T::lit(0.5);
    if x < half {
        // reflection: Γ(x)Γ(1-x) = π / sin(πx)
        let pi = T::PI();
        return (pi / (pi * x).sin().abs()).ln() - ln_gamma(T::one() - x);
    }
    let z = x - T::one();
    let mut acc = T::lit(LANCZOS_COEFFS[0]);
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += T::lit(c) / (z + T::from_index(i));
    }
    let t = z + T::lit(LANCZOS_G) + half;
    half * (T::lit(2.0) * T::PI()).ln() + (z + half) * t.ln() - t + acc.ln()
}

/// `ln B(a, b)`.
pub fn ln_beta<T: Scalar>(a: T, b: T) -> T {
    ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)
}

/// `ln C(n, k)`; `-inf` when `k > n`.
pub fn ln_binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::neg_infinity();
    }
    if n < LOG_SPACE_THRESHOLD {
        return binomial_product::<T>(n, k).ln();
    }
    ln_gamma(T::from_index(n + 1))
        - ln_gamma(T::from_index(k + 1))
        - ln_gamma(T::from_index(n - k + 1))
}

/// `C(n, k)` as a float. Small `n` use an exact running product, larger `n`
/// go through log-gamma so that no intermediate overflows.
pub fn binomial<T: Scalar>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    if n < LOG_SPACE_THRESHOLD {
        binomial_product(n, k)
    } else {
        ln_binomial::<T>(n, k).exp()
    }
}

fn binomial_product<T: Scalar>(n: usize, k: usize) -> T {
    let k = k.min(n - k);
    let mut acc = T::one();
    for i in 1..=k {
        acc = acc * T::from_index(n - k + i) / T::from_index(i);
    }
    acc.round()
}

/// `[k]_order / [d]_order` where `[x]_m = x (x-1) ... (x-m+1)`.
///
/// This is the probability that `order` distinct obligors all default given
/// that exactly `k` of `d` did.
pub fn falling_factorial_ratio<T: Scalar>(k: usize, d: usize, order: usize) -> T {
    if k < order {
        return T::zero();
    }
    (0..order).fold(T::one(), |acc, t| {
        acc * T::from_index(k - t) / T::from_index(d - t)
    })
}
