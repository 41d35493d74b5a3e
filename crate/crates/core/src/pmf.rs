//! Distributions of the default count `S_d` and the exchangeable pmf they
//! correspond to.
//!
//! An exchangeable Bernoulli law on `{0,1}^d` is determined by one value
//! `f_i` per number of ones `i`; the count pmf is `p_j = C(d, j) f_j`. All
//! risk quantities below are functions of the count pmf alone.

use crate::error::{Error, Result};
use crate::scalar::{compensated_sum, CompensatedSum, Scalar};
use crate::special::{binomial, falling_factorial_ratio, ln_binomial};

/// Probability vector `(p_0, ..., p_d)` of the number of defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct DefaultCountPmf<T> {
    d: usize,
    probs: Vec<T>,
}

/// Common pmf value `f_i` of every binary vector with `i` ones.
#[derive(Debug, Clone, PartialEq)]
pub struct ExchangeablePmfSummary<T> {
    d: usize,
    f: Vec<T>,
}

impl<T: Scalar> DefaultCountPmf<T> {
    /// Builds and validates a dense pmf on `{0, ..., d}`.
    pub fn new(d: usize, probs: Vec<T>) -> Result<Self> {
        Self { d, probs }.validate()
    }

    /// Builds a pmf from `(index, mass)` pairs; unlisted indices get zero mass.
    /// Repeated indices accumulate.
    pub fn from_sparse(d: usize, atoms: &[(usize, T)]) -> Result<Self> {
        let mut probs = vec![T::zero(); d + 1];
        for &(j, m) in atoms {
            if j > d {
                return Err(Error::LengthMismatch {
                    d,
                    expected: d + 1,
                    found: j + 1,
                });
            }
            probs[j] += m;
        }
        Self::new(d, probs)
    }

    /// Unit mass at `k`.
    pub fn point_mass(d: usize, k: usize) -> Result<Self> {
        Self::from_sparse(d, &[(k, T::one())])
    }

    /// Count pmf of `d` independent `Bernoulli(p)` defaults.
    pub fn binomial(d: usize, p: T) -> Result<Self> {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::InvalidProbability { p: p.as_f64() });
        }
        let (lp, lq) = (p.ln(), (T::one() - p).ln());
        let probs = (0..=d)
            .map(|j| {
                (ln_binomial::<T>(d, j) + T::from_index(j) * lp + T::from_index(d - j) * lq).exp()
            })
            .collect();
        Self::new(d, probs)
    }

    /// Checks length, nonnegativity and normalization.
    pub fn validate(self) -> Result<Self> {
        if self.probs.len() != self.d + 1 {
            return Err(Error::LengthMismatch {
                d: self.d,
                expected: self.d + 1,
                found: self.probs.len(),
            });
        }
        if let Some((index, &value)) = self
            .probs
            .iter()
            .enumerate()
            .find(|(_, &x)| !(x >= -T::mass_tol()))
        {
            return Err(Error::NegativeMass {
                index,
                value: value.as_f64(),
            });
        }
        let sum = compensated_sum(self.probs.iter().copied());
        if !((sum - T::one()).abs() <= T::norm_tol()) {
            return Err(Error::NotNormalized { sum: sum.as_f64() });
        }
        Ok(self)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn probs(&self) -> &[T] {
        &self.probs
    }

    /// `P(S_d = j)`, zero outside `0..=d`.
    pub fn prob(&self, j: usize) -> T {
        self.probs.get(j).copied().unwrap_or_else(T::zero)
    }

    /// Nonzero atoms in increasing order.
    pub fn atoms(&self) -> impl Iterator<Item = (usize, T)> + Clone + '_ {
        self.probs
            .iter()
            .copied()
            .enumerate()
            .filter(|&(_, m)| m != T::zero())
    }

    /// `E[S_d]`.
    pub fn mean(&self) -> T {
        compensated_sum(self.atoms().map(|(j, m)| T::from_index(j) * m))
    }

    /// `E[S_d^2]`.
    pub fn second_moment(&self) -> T {
        compensated_sum(self.atoms().map(|(j, m)| {
            let j = T::from_index(j);
            j * j * m
        }))
    }

    /// Cross moment `mu_order = E[X_1 ... X_order]` of the exchangeable
    /// law behind this count pmf.
    pub fn cross_moment(&self, order: usize) -> Result<T> {
        if order < 1 || order > self.d {
            return Err(Error::OrderOutOfRange { order, d: self.d });
        }
        Ok(compensated_sum(self.atoms().map(|(k, m)| {
            falling_factorial_ratio::<T>(k, self.d, order) * m
        })))
    }

    /// Equicorrelation `(mu2 - p^2) / (p q)` for marginal `p`.
    pub fn correlation(&self, p: T) -> Result<T> {
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::DegenerateMarginal { p: p.as_f64() });
        }
        let mu2 = self.cross_moment(2)?;
        Ok((mu2 - p * p) / (p * (T::one() - p)))
    }

    /// Lower `alpha`-quantile of the default count.
    pub fn var(&self, alpha: T) -> Result<usize> {
        check_alpha(alpha)?;
        Ok(var_of_atoms(self.atoms(), alpha))
    }

    /// `E[S_d | S_d >= VaR_alpha(S_d)]`.
    pub fn es(&self, alpha: T) -> Result<T> {
        check_alpha(alpha)?;
        es_of_atoms(self.atoms(), alpha)
    }

    /// Exchangeable pmf summary `f_i = p_i / C(d, i)`.
    pub fn to_exchangeable(&self) -> ExchangeablePmfSummary<T> {
        let f = self
            .probs
            .iter()
            .enumerate()
            .map(|(i, &p)| {
                if p == T::zero() {
                    T::zero()
                } else if self.d < 60 {
                    p / binomial::<T>(self.d, i)
                } else {
                    (p.ln() - ln_binomial::<T>(self.d, i)).exp()
                }
            })
            .collect();
        ExchangeablePmfSummary { d: self.d, f }
    }

    /// Entrywise convex combination of sparse components.
    pub fn mixture<'a, I>(d: usize, components: I) -> Result<Self>
    where
        I: IntoIterator<Item = (T, &'a [(usize, T)])>,
    {
        let mut acc: Vec<CompensatedSum<T>> = vec![CompensatedSum::new(); d + 1];
        for (w, atoms) in components {
            for &(j, m) in atoms {
                acc[j].add(w * m);
            }
        }
        Self::new(d, acc.iter().map(CompensatedSum::value).collect())
    }
}

impl<T: Scalar> ExchangeablePmfSummary<T> {
    /// Builds and validates `(f_0, ..., f_d)`.
    pub fn new(d: usize, f: Vec<T>) -> Result<Self> {
        if f.len() != d + 1 {
            return Err(Error::LengthMismatch {
                d,
                expected: d + 1,
                found: f.len(),
            });
        }
        if let Some((index, &value)) = f.iter().enumerate().find(|(_, &x)| !(x >= -T::mass_tol())) {
            return Err(Error::NegativeMass {
                index,
                value: value.as_f64(),
            });
        }
        let summary = Self { d, f };
        let total = compensated_sum(summary.count_masses()?);
        if !((total - T::one()).abs() <= T::norm_tol()) {
            return Err(Error::NotNormalized {
                sum: total.as_f64(),
            });
        }
        Ok(summary)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn values(&self) -> &[T] {
        &self.f
    }

    /// Count pmf `p_j = C(d, j) f_j`.
    pub fn to_count_pmf(&self) -> Result<DefaultCountPmf<T>> {
        DefaultCountPmf::new(self.d, self.count_masses()?)
    }

    fn count_masses(&self) -> Result<Vec<T>> {
        self.f
            .iter()
            .enumerate()
            .map(|(j, &fj)| {
                let m = if fj <= T::zero() {
                    T::zero()
                } else if self.d < 60 {
                    binomial::<T>(self.d, j) * fj
                } else {
                    (ln_binomial::<T>(self.d, j) + fj.ln()).exp()
                };
                if m.is_finite() {
                    Ok(m)
                } else {
                    Err(Error::Overflow { index: j })
                }
            })
            .collect()
    }
}

pub(crate) fn check_alpha<T: Scalar>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha < T::one() {
        Ok(())
    } else {
        Err(Error::InvalidAlpha {
            alpha: alpha.as_f64(),
        })
    }
}

/// Smallest atom whose CDF reaches `alpha`, with ties resolved by
/// `mass_tol`. Atoms must be in increasing index order.
pub(crate) fn var_of_atoms<T: Scalar, I>(atoms: I, alpha: T) -> usize
where
    I: IntoIterator<Item = (usize, T)>,
{
    let threshold = alpha - T::mass_tol();
    let mut cdf = CompensatedSum::new();
    let mut last = 0;
    for (j, m) in atoms {
        if m <= T::zero() {
            continue;
        }
        cdf.add(m);
        last = j;
        if cdf.value() >= threshold {
            return j;
        }
    }
    // only reachable when rounding leaves total mass just short of alpha
    last
}

pub(crate) fn es_of_atoms<T: Scalar, I>(atoms: I, alpha: T) -> Result<T>
where
    I: IntoIterator<Item = (usize, T)> + Clone,
{
    let v = var_of_atoms(atoms.clone(), alpha);
    let mut num = CompensatedSum::new();
    let mut den = CompensatedSum::new();
    for (j, m) in atoms.into_iter().filter(|&(j, _)| j >= v) {
        num.add(T::from_index(j) * m);
        den.add(m);
    }
    let den = den.value();
    if den <= T::zero() {
        return Err(Error::EmptyTail);
    }
    Ok(num.value() / den)
}
