//! Beta-mixed binomial benchmark.
//!
//! Defaults are conditionally independent `Bernoulli(theta)` with
//! `theta ~ Beta(a, b)`, so the default count is beta-binomial. Matching
//! `p = E[theta]` and `mu2 = E[theta^2]` gives `a + b = 1/rho - 1`.

use crate::error::{Error, Result};
use crate::pmf::DefaultCountPmf;
use crate::scalar::Scalar;
use crate::special::{ln_beta, ln_binomial};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BetaMixParams<T> {
    a: T,
    b: T,
}

impl<T: Scalar> BetaMixParams<T> {
    pub fn new(a: T, b: T) -> Result<Self> {
        if !(a > T::zero() && b > T::zero() && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidBetaParams {
                a: a.as_f64(),
                b: b.as_f64(),
            });
        }
        Ok(Self { a, b })
    }

    /// Moment-matched parameters for marginal `p` and equicorrelation `rho`.
    /// The mixing model only covers `0 < rho < 1`.
    pub fn calibrate(p: T, rho: T) -> Result<Self> {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::InvalidProbability { p: p.as_f64() });
        }
        if !(rho > T::zero() && rho < T::one()) {
            return Err(Error::InadmissibleCorrelation { rho: rho.as_f64() });
        }
        let total = T::one() / rho - T::one();
        Self::new(p * total, (T::one() - p) * total)
    }

    pub fn a(&self) -> T {
        self.a
    }

    pub fn b(&self) -> T {
        self.b
    }

    pub fn implied_p(&self) -> T {
        self.a / (self.a + self.b)
    }

    pub fn implied_rho(&self) -> T {
        T::one() / (self.a + self.b + T::one())
    }

    /// `E[theta^2] = a(a+1) / ((a+b)(a+b+1))`.
    pub fn implied_mu2(&self) -> T {
        let s = self.a + self.b;
        self.a * (self.a + T::one()) / (s * (s + T::one()))
    }

    /// `P(S = j) = C(d, j) B(a + j, b + d - j) / B(a, b)`, in log space.
    pub fn pmf(&self, d: usize) -> Result<DefaultCountPmf<T>> {
        if d < 1 {
            return Err(Error::InvalidDimension { d, min: 1 });
        }
        let base = ln_beta(self.a, self.b);
        let probs = (0..=d)
            .map(|j| {
                let lj = T::from_index(j);
                let ln_p = ln_binomial::<T>(d, j)
                    + ln_beta(self.a + lj, self.b + T::from_index(d) - lj)
                    - base;
                ln_p.exp()
            })
            .collect();
        DefaultCountPmf::new(d, probs)
    }

    pub fn var(&self, d: usize, alpha: T) -> Result<usize> {
        self.pmf(d)?.var(alpha)
    }

    pub fn es(&self, d: usize, alpha: T) -> Result<T> {
        self.pmf(d)?.es(alpha)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn calibrate_examples() {
        let u = BetaMixParams::calibrate(0.5, 1.0 / 3.0).unwrap();
        assert_relative_eq!(u.a(), 1.0, epsilon = 1e-14);
        assert_relative_eq!(u.b(), 1.0, epsilon = 1e-14);

        let m = BetaMixParams::calibrate(0.003, 1.0 / 6.0).unwrap();
        assert_relative_eq!(m.a(), 0.015, epsilon = 1e-14);
        assert_relative_eq!(m.b(), 4.985, epsilon = 1e-13);
        assert_relative_eq!(
            m.implied_mu2(),
            (1.0 / 6.0) * 0.003 * 0.997 + 0.003 * 0.003,
            epsilon = 1e-15
        );

        assert!(matches!(
            BetaMixParams::calibrate(0.3, 0.0),
            Err(Error::InadmissibleCorrelation { .. })
        ));
        assert!(matches!(
            BetaMixParams::calibrate(0.3, 1.0),
            Err(Error::InadmissibleCorrelation { .. })
        ));
    }

    #[test]
    fn uniform_mixing_gives_uniform_counts() {
        let u = BetaMixParams::new(1.0, 1.0).unwrap();
        let pmf = u.pmf(2).unwrap();
        for &x in pmf.probs() {
            assert_relative_eq!(x, 1.0 / 3.0, epsilon = 1e-13);
        }
    }

    #[test]
    fn heavy_mass_at_zero_for_extreme_shape() {
        let m = BetaMixParams::calibrate(0.003, 5.0 / 6.0).unwrap();
        assert!(m.a() < 1e-3);
        let pmf = m.pmf(100).unwrap();
        assert!(pmf.prob(0) >= 0.99);
        assert_relative_eq!(pmf.mean(), 0.3, epsilon = 1e-9 * 100.0);
        assert_eq!(pmf.var(0.99).unwrap(), 0);
    }

    #[test]
    fn tabulated_beta_var() {
        let cases = [
            (0.003, 1.0 / 6.0, 0.99, 9),
            (0.017, 1.0 / 6.0, 0.95, 11),
            (0.266, 1.0 / 2.0, 0.99, 100),
        ];
        for (p, rho, alpha, want) in cases {
            let m = BetaMixParams::calibrate(p, rho).unwrap();
            assert_eq!(m.var(100, alpha).unwrap(), want);
        }
    }

    #[test]
    fn es_is_at_least_var() {
        let m = BetaMixParams::calibrate(0.017, 0.5).unwrap();
        for alpha in [0.9, 0.95, 0.99] {
            assert!(m.es(100, alpha).unwrap() >= m.var(100, alpha).unwrap() as f64);
        }
    }
}
