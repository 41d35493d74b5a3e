//! Extremal rays of `S_d(p, rho)`: count pmfs with mean `pd` and second
//! moment `pd + d(d-1) mu2`.
//!
//! Two linear constraints allow at most three support points. For a triple
//! `i < j < k` the masses are the Lagrange weights of the moment vector
//! `(1, pd, E[S^2])` on the nodes `{i, j, k}`:
//!
//! ```text
//! p_i = (E[S^2] - (j+k) pd + jk) / ((j-i)(k-i))
//! ```
//!
//! and cyclically for `p_j` (with a sign flip) and `p_k`. A triple yields a
//! ray iff all three are nonnegative; a zero weight collapses it to a
//! two-point ray, which is then shared by many triples.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::pmf::DefaultCountPmf;
use crate::ray::RayDensity;
use crate::rays_mean;
use crate::scalar::{compensated_sum, Scalar};

/// Coefficients of the homogeneous system `sum alpha_j p_j = 0`,
/// `sum beta_j p_j = 0` describing `S_d(p, rho)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrSystemCoeffs<T> {
    /// `alpha_j = j - pd`
    pub alphas: Vec<T>,
    /// `beta_j = j^2 - (pd + d(d-1) mu2)`
    pub betas: Vec<T>,
}

impl<T: Scalar> CorrSystemCoeffs<T> {
    pub fn new(spec: &ClassSpec<T>) -> Result<Self> {
        spec.require_rho()?;
        let m2 = spec.second_moment_target().expect("rho present");
        let pd = spec.pd();
        let (alphas, betas) = (0..=spec.d())
            .map(|j| {
                let j = T::from_index(j);
                (j - pd, j * j - m2)
            })
            .unzip();
        Ok(Self { alphas, betas })
    }

    /// `(sum alpha_j p_j, sum beta_j p_j)` for a pmf of matching size.
    pub fn residuals(&self, pmf: &DefaultCountPmf<T>) -> (T, T) {
        let a = compensated_sum(pmf.atoms().map(|(j, m)| self.alphas[j] * m));
        let b = compensated_sum(pmf.atoms().map(|(j, m)| self.betas[j] * m));
        (a, b)
    }
}

#[inline]
fn triple_masses<T: Scalar>(pd: T, m2: T, i: usize, j: usize, k: usize) -> [T; 3] {
    let (fi, fj, fk) = (T::from_index(i), T::from_index(j), T::from_index(k));
    let num = |a: T, b: T| m2 - (a + b) * pd + a * b;
    [
        num(fj, fk) / ((fj - fi) * (fk - fi)),
        -num(fi, fk) / ((fk - fj) * (fj - fi)),
        num(fi, fj) / ((fk - fj) * (fk - fi)),
    ]
}

/// Normalized ray on `{i, j, k}` if its closed-form masses are all
/// nonnegative (within `mass_tol`), `None` otherwise. Near-zero masses are
/// dropped, leaving a two- or one-point ray.
pub fn triple_ray<T: Scalar>(
    spec: &ClassSpec<T>,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<RayDensity<T>>> {
    spec.require_rho()?;
    if !(i < j && j < k && k <= spec.d()) {
        return Err(Error::InvalidTriple {
            i,
            j,
            k,
            d: spec.d(),
        });
    }
    let m2 = spec.second_moment_target().expect("rho present");
    triple_ray_unchecked(spec, m2, i, j, k)
}

fn triple_ray_unchecked<T: Scalar>(
    spec: &ClassSpec<T>,
    m2: T,
    i: usize,
    j: usize,
    k: usize,
) -> Result<Option<RayDensity<T>>> {
    let masses = triple_masses(spec.pd(), m2, i, j, k);
    let tol = T::mass_tol();
    if masses.iter().any(|&m| m < -tol) {
        return Ok(None);
    }
    let mut atoms: Vec<(usize, T)> = [i, j, k]
        .into_iter()
        .zip(masses)
        .filter(|&(_, m)| m > tol)
        .collect();
    let total = compensated_sum(atoms.iter().map(|a| a.1));
    for a in &mut atoms {
        a.1 /= total;
    }
    RayDensity::from_atoms(spec, &atoms).map(Some)
}

/// Checks that the second-moment target lies in the range spanned by
/// `E_d(p)` and returns that range.
pub fn check_feasible<T: Scalar>(spec: &ClassSpec<T>) -> Result<(T, T)> {
    let mu2 = spec.mu2_target().ok_or(Error::CorrelationTarget("with"))?;
    let bounds = rays_mean::moment_bounds(&spec.mean_only(), 2)?;
    let tol = T::mass_tol();
    if mu2 < bounds.min - tol || mu2 > bounds.max + tol {
        return Err(Error::InfeasibleMoment {
            mu2: mu2.as_f64(),
            min: bounds.min.as_f64(),
            max: bounds.max.as_f64(),
        });
    }
    Ok((bounds.min, bounds.max))
}

/// All rays of `S_d(p, rho)`, deduplicated by support and sorted
/// lexicographically by support.
pub fn enumerate_rays<T: Scalar>(spec: &ClassSpec<T>) -> Result<Vec<RayDensity<T>>> {
    spec.require_rho()?;
    check_feasible(spec)?;
    let m2 = spec.second_moment_target().expect("rho present");
    let d = spec.d();

    let per_i: Vec<Vec<RayDensity<T>>> = (0..=d)
        .into_par_iter()
        .map(|i| {
            let mut found = Vec::new();
            for j in i + 1..=d {
                for k in j + 1..=d {
                    if let Some(ray) = triple_ray_unchecked(spec, m2, i, j, k)? {
                        found.push(ray);
                    }
                }
            }
            Ok(found)
        })
        .collect::<Result<_>>()?;

    let mut unique: BTreeMap<Vec<usize>, RayDensity<T>> = BTreeMap::new();
    for ray in per_i.into_iter().flatten() {
        unique.entry(ray.support().to_vec()).or_insert(ray);
    }

    // Two-point rays of S_d(p) whose second moment already matches; the
    // triple scan finds them too whenever d >= 2.
    for ray in rays_mean::enumerate_rays(&spec.mean_only())? {
        if (ray.second_moment() - m2).abs() <= T::mass_tol() {
            if let std::collections::btree_map::Entry::Vacant(slot) =
                unique.entry(ray.support().to_vec())
            {
                slot.insert(RayDensity::from_atoms(spec, &ray.atom_vec())?);
            }
        }
    }
    Ok(unique.into_values().collect())
}

/// Outcome of a class membership check.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub member: bool,
    /// `sum_j (j - pd) p_j`
    pub mean_residual: T,
    /// `sum_j (j^2 - E[S^2]) p_j`; absent for mean-only classes.
    pub second_moment_residual: Option<T>,
}

/// Tests whether `pmf` lies in the class described by `spec`: the mean
/// constraint within `1e-9 d`, and the second-moment constraint (if the
/// class has one) within `1e-9 d^2`.
pub fn membership<T: Scalar>(
    pmf: &DefaultCountPmf<T>,
    spec: &ClassSpec<T>,
) -> Result<Membership<T>> {
    if pmf.d() != spec.d() {
        return Err(Error::LengthMismatch {
            d: spec.d(),
            expected: spec.d() + 1,
            found: pmf.d() + 1,
        });
    }
    let d = T::from_index(spec.d());
    let tol = T::moment_tol();
    let mean_residual =
        compensated_sum(pmf.atoms().map(|(j, m)| (T::from_index(j) - spec.pd()) * m));
    let mut member = mean_residual.abs() <= tol * d;
    let second_moment_residual = if spec.rho().is_some() {
        let (_, b) = CorrSystemCoeffs::new(spec)?.residuals(pmf);
        member &= b.abs() <= tol * d * d;
        Some(b)
    } else {
        None
    };
    Ok(Membership {
        member,
        mean_residual,
        second_moment_residual,
    })
}
