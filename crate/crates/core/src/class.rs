//! Class parameters `(d, p)` and `(d, p, rho)` with their derived quantities.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// An exchangeable default class: `d` obligors with marginal default
/// probability `p`, optionally with a target equicorrelation `rho`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassSpec<T> {
    d: usize,
    p: T,
    rho: Option<T>,
    pd: T,
    pd_integer: bool,
    j1_max: usize,
    j2_min: usize,
}

impl<T: Scalar> ClassSpec<T> {
    /// Mean-only class `E_d(p)`.
    pub fn new(d: usize, p: T) -> Result<Self> {
        if d < 1 {
            return Err(Error::InvalidDimension { d, min: 1 });
        }
        if !(p > T::zero() && p < T::one()) {
            return Err(Error::InvalidProbability { p: p.as_f64() });
        }
        let raw = p * T::from_index(d);
        let nearest = raw.round();
        let pd_integer = (raw - nearest).abs() <= T::snap_tol() * T::from_index(d).max(T::one());
        let (pd, j1_max, j2_min) = if pd_integer {
            let n = nearest.to_usize().expect("0 < pd < d");
            (nearest, n - 1, n + 1)
        } else {
            let f = raw.floor().to_usize().expect("0 <= floor(pd) < d");
            (raw, f, f + 1)
        };
        Ok(Self {
            d,
            p,
            rho: None,
            pd,
            pd_integer,
            j1_max,
            j2_min,
        })
    }

    /// Class `E_d(p, rho)` with a fixed equicorrelation. Needs `d >= 2` so
    /// that pairs of obligors exist.
    pub fn with_rho(d: usize, p: T, rho: T) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDimension { d, min: 2 });
        }
        if !(rho > -T::one() && rho <= T::one()) {
            return Err(Error::InvalidCorrelation { rho: rho.as_f64() });
        }
        let mut spec = Self::new(d, p)?;
        spec.rho = Some(rho);
        Ok(spec)
    }

    /// The same `(d, p)` without the correlation constraint.
    pub fn mean_only(&self) -> Self {
        Self { rho: None, ..*self }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn q(&self) -> T {
        T::one() - self.p
    }

    pub fn rho(&self) -> Option<T> {
        self.rho
    }

    /// Expected number of defaults `p * d`, snapped to the nearest integer
    /// when it is one up to rounding.
    pub fn pd(&self) -> T {
        self.pd
    }

    pub fn pd_is_integer(&self) -> bool {
        self.pd_integer
    }

    /// Largest admissible lower support point of a two-point ray.
    pub fn j1_max(&self) -> usize {
        self.j1_max
    }

    /// Smallest admissible upper support point of a two-point ray.
    pub fn j2_min(&self) -> usize {
        self.j2_min
    }

    /// `mu2 = rho p q + p^2`, present iff the class carries a correlation.
    pub fn mu2_target(&self) -> Option<T> {
        self.rho
            .map(|rho| rho * self.p * self.q() + self.p * self.p)
    }

    /// `E[S^2] = pd + d (d-1) mu2` implied by the correlation target.
    pub fn second_moment_target(&self) -> Option<T> {
        self.mu2_target().map(|mu2| self.pd + self.pairs() * mu2)
    }

    /// `d (d - 1)`.
    pub(crate) fn pairs(&self) -> T {
        let d = T::from_index(self.d);
        d * (d - T::one())
    }

    pub(crate) fn require_mean_only(&self) -> Result<()> {
        match self.rho {
            None => Ok(()),
            Some(_) => Err(Error::CorrelationTarget("without")),
        }
    }

    pub(crate) fn require_rho(&self) -> Result<T> {
        self.rho.ok_or(Error::CorrelationTarget("with"))
    }
}
