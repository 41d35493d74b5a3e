//! VaR and ES bounds over a class generated by ray densities.
//!
//! Because the CDF of a mixture is the mixture of CDFs, the VaR of any
//! member of a class lies between the smallest and largest ray VaR, and both
//! ends are attained on rays. For `S_d(p)` the extremes also have a closed
//! form driven by `j1p = (p - (1 - alpha)) d / alpha`.

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::pmf::check_alpha;
use crate::ray::RayDensity;
use crate::scalar::Scalar;

/// Bounds on VaR and ES at one confidence level, with the supports of the
/// rays attaining them.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskBounds<T> {
    pub alpha: T,
    pub var_min: usize,
    pub var_max: usize,
    pub es_min: T,
    pub es_max: T,
    pub var_argmin: Vec<usize>,
    pub var_argmax: Vec<usize>,
    pub es_argmin: Vec<usize>,
    pub es_argmax: Vec<usize>,
}

/// VaR extrema over a ray set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarBounds {
    pub min: usize,
    pub max: usize,
    pub argmin: Vec<usize>,
    pub argmax: Vec<usize>,
}

/// ES extrema over a ray set.
#[derive(Debug, Clone, PartialEq)]
pub struct EsBounds<T> {
    pub min: T,
    pub max: T,
    pub argmin: Vec<usize>,
    pub argmax: Vec<usize>,
}

/// Class-wide ES envelope `[min_R VaR(R), d]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EsEnvelope<T> {
    pub lower: T,
    pub upper: T,
    /// `1 - p <= alpha`: the upper end `d` is reached by `r_(0,d)`.
    pub upper_attained: bool,
}

// Keeps the extreme value; among equal values, the lexicographically
// smallest support.
fn better<V: PartialOrd>(
    candidate: &(V, &[usize]),
    incumbent: &(V, &[usize]),
    want_min: bool,
) -> bool {
    let (cv, cs) = candidate;
    let (iv, is) = incumbent;
    match cv.partial_cmp(iv) {
        Some(std::cmp::Ordering::Less) => want_min,
        Some(std::cmp::Ordering::Greater) => !want_min,
        _ => cs < is,
    }
}

fn extremes<V: PartialOrd + Copy>(values: &[(V, &[usize])]) -> ((V, Vec<usize>), (V, Vec<usize>)) {
    let mut lo = values[0];
    let mut hi = values[0];
    for v in &values[1..] {
        if better(v, &lo, true) {
            lo = *v;
        }
        if better(v, &hi, false) {
            hi = *v;
        }
    }
    ((lo.0, lo.1.to_vec()), (hi.0, hi.1.to_vec()))
}

/// Exact VaR range over `rays`.
pub fn var_bounds_scan<T: Scalar>(rays: &[RayDensity<T>], alpha: T) -> Result<VarBounds> {
    check_alpha(alpha)?;
    if rays.is_empty() {
        return Err(Error::EmptyRaySet);
    }
    let values = rays
        .iter()
        .map(|r| Ok((r.var(alpha)?, r.support())))
        .collect::<Result<Vec<_>>>()?;
    let ((min, argmin), (max, argmax)) = extremes(&values);
    Ok(VarBounds {
        min,
        max,
        argmin,
        argmax,
    })
}

/// ES range over `rays` (the "ray envelope"; not proven sharp class-wide).
pub fn es_bounds_scan<T: Scalar>(rays: &[RayDensity<T>], alpha: T) -> Result<EsBounds<T>> {
    check_alpha(alpha)?;
    if rays.is_empty() {
        return Err(Error::EmptyRaySet);
    }
    let values = rays
        .iter()
        .map(|r| Ok((r.es(alpha)?, r.support())))
        .collect::<Result<Vec<_>>>()?;
    let ((min, argmin), (max, argmax)) = extremes(&values);
    Ok(EsBounds {
        min,
        max,
        argmin,
        argmax,
    })
}

/// VaR and ES ray-scan bounds together.
pub fn risk_bounds<T: Scalar>(rays: &[RayDensity<T>], alpha: T) -> Result<RiskBounds<T>> {
    let v = var_bounds_scan(rays, alpha)?;
    let e = es_bounds_scan(rays, alpha)?;
    Ok(RiskBounds {
        alpha,
        var_min: v.min,
        var_max: v.max,
        es_min: e.min,
        es_max: e.max,
        var_argmin: v.argmin,
        var_argmax: v.argmax,
        es_argmin: e.argmin,
        es_argmax: e.argmax,
    })
}

/// Closed-form VaR range over `S_d(p)`:
///
/// * `j1p <= 0`: `(0, largest integer < pd / (1 - alpha))`
/// * `0 < j1p <= j1_max`: `(ceil(j1p), d)`
/// * `j1p > j1_max`: `(j1_max + 1, d)`, which is `pd` itself when `pd` is an
///   integer (the point ray) and `j2_min` otherwise
///
/// Integer boundaries are resolved with `snap_tol`, matching the inclusive
/// CDF tie rule of [`DefaultCountPmf::var`](crate::DefaultCountPmf::var).
pub fn var_bounds_mean_closed_form<T: Scalar>(
    spec: &ClassSpec<T>,
    alpha: T,
) -> Result<(usize, usize)> {
    spec.require_mean_only()?;
    check_alpha(alpha)?;
    let d = T::from_index(spec.d());
    let p = spec.p();
    let pd = spec.pd();
    let q_alpha = T::one() - alpha;
    let eps = T::snap_tol();
    let j1p = (p - q_alpha) * d / alpha;

    if j1p <= eps {
        let x = pd / q_alpha;
        let nearest = x.round();
        let below = if (x - nearest).abs() <= eps {
            nearest - T::one()
        } else {
            x.floor()
        };
        let max = below.max(T::zero()).to_usize().expect("finite");
        return Ok((0, max.min(spec.d())));
    }
    if j1p <= T::from_index(spec.j1_max()) + eps {
        let min = (j1p - eps)
            .ceil()
            .max(T::zero())
            .to_usize()
            .expect("finite");
        return Ok((min, spec.d()));
    }
    Ok((spec.j1_max() + 1, spec.d()))
}

/// ES envelope from the ray VaR minimum. The lower end is the smallest ray
/// VaR; the upper end is `d`.
pub fn es_envelope<T: Scalar>(
    spec: &ClassSpec<T>,
    rays: &[RayDensity<T>],
    alpha: T,
) -> Result<EsEnvelope<T>> {
    let v = var_bounds_scan(rays, alpha)?;
    Ok(EsEnvelope {
        lower: T::from_index(v.min),
        upper: T::from_index(spec.d()),
        upper_attained: spec.q() <= alpha,
    })
}
