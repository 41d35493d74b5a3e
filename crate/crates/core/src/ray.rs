//! Sparse extremal densities of a class.

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::pmf::{self, DefaultCountPmf};
use crate::scalar::{compensated_sum, Scalar};

/// Which class a ray generates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClassTag<T> {
    MeanOnly { p: T },
    MeanCorr { p: T, rho: T },
}

impl<T: Scalar> ClassTag<T> {
    pub fn of(spec: &ClassSpec<T>) -> Self {
        match spec.rho() {
            None => ClassTag::MeanOnly { p: spec.p() },
            Some(rho) => ClassTag::MeanCorr { p: spec.p(), rho },
        }
    }
}

/// A ray density: a pmf of the default count supported on at most three
/// points.
#[derive(Debug, Clone, PartialEq)]
pub struct RayDensity<T> {
    d: usize,
    support: Vec<usize>,
    masses: Vec<T>,
    tag: ClassTag<T>,
}

impl<T: Scalar> RayDensity<T> {
    /// Rebuilds a ray of `spec` from stored atoms, with the same checks the
    /// enumerators apply.
    pub fn new(spec: &ClassSpec<T>, atoms: &[(usize, T)]) -> Result<Self> {
        let ok = (1..=3).contains(&atoms.len())
            && atoms.windows(2).all(|w| w[0].0 < w[1].0)
            && atoms.iter().all(|a| a.0 <= spec.d());
        if !ok {
            return Err(Error::InvalidSupport {
                support: atoms.iter().map(|a| a.0).collect(),
                d: spec.d(),
            });
        }
        Self::from_atoms(spec, atoms)
    }

    /// Assembles a ray from `(index, mass)` atoms, checking the support size,
    /// positivity, normalization and the moment constraints of `spec`.
    pub(crate) fn from_atoms(spec: &ClassSpec<T>, atoms: &[(usize, T)]) -> Result<Self> {
        debug_assert!(!atoms.is_empty() && atoms.len() <= 3);
        debug_assert!(atoms.windows(2).all(|w| w[0].0 < w[1].0));
        let ray = Self {
            d: spec.d(),
            support: atoms.iter().map(|a| a.0).collect(),
            masses: atoms.iter().map(|a| a.1).collect(),
            tag: ClassTag::of(spec),
        };
        ray.check(spec)?;
        Ok(ray)
    }

    fn check(&self, spec: &ClassSpec<T>) -> Result<()> {
        if let Some((i, &m)) = self
            .masses
            .iter()
            .enumerate()
            .find(|(_, &m)| !(m > T::zero()))
        {
            return Err(Error::NegativeMass {
                index: self.support[i],
                value: m.as_f64(),
            });
        }
        let total = compensated_sum(self.masses.iter().copied());
        if !((total - T::one()).abs() <= T::mass_tol()) {
            return Err(Error::NotNormalized {
                sum: total.as_f64(),
            });
        }
        let d = T::from_index(self.d);
        let mean = self.mean();
        if !((mean - spec.pd()).abs() <= T::norm_tol() * d) {
            return Err(Error::MeanMismatch {
                mean: mean.as_f64(),
                target: spec.pd().as_f64(),
            });
        }
        if let Some(target) = spec.second_moment_target() {
            let m2 = self.second_moment();
            if !((m2 - target).abs() <= T::moment_tol() * d * d) {
                return Err(Error::SecondMomentMismatch {
                    value: m2.as_f64(),
                    target: target.as_f64(),
                });
            }
        }
        Ok(())
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Strictly increasing support indices.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// Masses aligned with [`support`](Self::support).
    pub fn masses(&self) -> &[T] {
        &self.masses
    }

    pub fn tag(&self) -> ClassTag<T> {
        self.tag
    }

    pub fn atoms(&self) -> impl Iterator<Item = (usize, T)> + Clone + '_ {
        self.support
            .iter()
            .copied()
            .zip(self.masses.iter().copied())
    }

    pub fn atom_vec(&self) -> Vec<(usize, T)> {
        self.atoms().collect()
    }

    pub fn mass_at(&self, j: usize) -> T {
        self.atoms()
            .find(|&(s, _)| s == j)
            .map_or_else(T::zero, |(_, m)| m)
    }

    pub fn mean(&self) -> T {
        compensated_sum(self.atoms().map(|(j, m)| T::from_index(j) * m))
    }

    pub fn second_moment(&self) -> T {
        compensated_sum(self.atoms().map(|(j, m)| {
            let j = T::from_index(j);
            j * j * m
        }))
    }

    /// Dense count pmf.
    pub fn to_pmf(&self) -> DefaultCountPmf<T> {
        DefaultCountPmf::from_sparse(self.d, &self.atom_vec()).expect("rays are valid pmfs")
    }

    /// Same value as [`DefaultCountPmf::var`] on the dense form.
    pub fn var(&self, alpha: T) -> Result<usize> {
        pmf::check_alpha(alpha)?;
        Ok(pmf::var_of_atoms(self.atoms(), alpha))
    }

    /// Same value as [`DefaultCountPmf::es`] on the dense form.
    pub fn es(&self, alpha: T) -> Result<T> {
        pmf::check_alpha(alpha)?;
        pmf::es_of_atoms(self.atoms(), alpha)
    }
}
