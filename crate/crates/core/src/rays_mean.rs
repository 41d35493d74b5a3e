//! Extremal rays of `S_d(p)`: count pmfs on `{0, ..., d}` with mean `pd`.
//!
//! The only linear constraint is `sum_j (j - pd) p_j = 0`, so every extremal
//! ray is supported on one point (`pd` itself, when integer) or on a pair
//! `j1 < pd < j2` with masses
//!
//! ```text
//! r(j1) = (j2 - pd) / (j2 - j1),   r(j2) = (pd - j1) / (j2 - j1).
//! ```

use crate::class::ClassSpec;
use crate::error::{Error, Result};
use crate::pmf::DefaultCountPmf;
use crate::ray::RayDensity;
use crate::scalar::Scalar;

/// Two-point ray `r_(j1, j2)` with `j1 <= j1_max` and `j2 >= j2_min`.
pub fn two_point_ray<T: Scalar>(
    spec: &ClassSpec<T>,
    j1: usize,
    j2: usize,
) -> Result<RayDensity<T>> {
    if j1 > spec.j1_max() || j2 < spec.j2_min() || j2 > spec.d() {
        return Err(Error::IndexOutOfRange {
            j1,
            j2,
            pd: spec.pd().as_f64(),
        });
    }
    let pd = spec.pd();
    let (lo, hi) = (T::from_index(j1), T::from_index(j2));
    let width = hi - lo;
    RayDensity::from_atoms(
        &spec.mean_only(),
        &[(j1, (hi - pd) / width), (j2, (pd - lo) / width)],
    )
}

/// Unit mass at `pd`; only exists when `pd` is an integer.
pub fn point_ray<T: Scalar>(spec: &ClassSpec<T>) -> Result<RayDensity<T>> {
    if !spec.pd_is_integer() {
        return Err(Error::NonIntegerMean {
            pd: spec.pd().as_f64(),
        });
    }
    RayDensity::from_atoms(&spec.mean_only(), &[(spec.j1_max() + 1, T::one())])
}

/// Number of rays of `S_d(p)`: `(j1_max + 1)(d - j1_max)` when `pd` is not
/// an integer, `d^2 p (1 - p) + 1 = pd (d - pd) + 1` when it is.
pub fn ray_count<T: Scalar>(spec: &ClassSpec<T>) -> usize {
    let d = spec.d();
    if spec.pd_is_integer() {
        let pd = spec.j1_max() + 1;
        pd * (d - pd) + 1
    } else {
        (spec.j1_max() + 1) * (d - spec.j1_max())
    }
}

/// All rays of `S_d(p)` in lexicographic `(j1, j2)` order, point ray last.
pub fn enumerate_rays<T: Scalar>(spec: &ClassSpec<T>) -> Result<Vec<RayDensity<T>>> {
    spec.require_mean_only()?;
    let mut rays = Vec::with_capacity(ray_count(spec));
    for j1 in 0..=spec.j1_max() {
        for j2 in spec.j2_min()..=spec.d() {
            rays.push(two_point_ray(spec, j1, j2)?);
        }
    }
    if spec.pd_is_integer() {
        rays.push(point_ray(spec)?);
    }
    Ok(rays)
}

/// Writes `pmf` as a convex combination of rays of `S_d(p)`.
///
/// Greedy residual pairing: after peeling the atom at an integer `pd`, the
/// lowest remaining index below `pd` is paired with the lowest remaining
/// index above it, with the largest weight that keeps both residuals
/// nonnegative. Each step exhausts one index, so at most `d + 1` rays
/// receive weight.
pub fn decompose<T: Scalar>(
    pmf: &DefaultCountPmf<T>,
    spec: &ClassSpec<T>,
) -> Result<Vec<(RayDensity<T>, T)>> {
    spec.require_mean_only()?;
    if pmf.d() != spec.d() {
        return Err(Error::LengthMismatch {
            d: spec.d(),
            expected: spec.d() + 1,
            found: pmf.d() + 1,
        });
    }
    let d = T::from_index(spec.d());
    let pd = spec.pd();
    let mean = pmf.mean();
    if !((mean - pd).abs() <= T::moment_tol() * d) {
        return Err(Error::MeanMismatch {
            mean: mean.as_f64(),
            target: pd.as_f64(),
        });
    }

    // residuals below this are rounding noise
    let eps = T::epsilon() * T::lit(16.0);
    let mut residual = pmf.probs().to_vec();
    let mut out = Vec::new();

    if spec.pd_is_integer() {
        let k = spec.j1_max() + 1;
        if residual[k] > eps {
            out.push((point_ray(spec)?, residual[k]));
        }
        residual[k] = T::zero();
    }

    let mut lo = 0;
    let mut hi = spec.j2_min();
    loop {
        while lo <= spec.j1_max() && residual[lo] <= eps {
            lo += 1;
        }
        while hi <= spec.d() && residual[hi] <= eps {
            hi += 1;
        }
        if lo > spec.j1_max() || hi > spec.d() {
            break;
        }
        let ray = two_point_ray(spec, lo, hi)?;
        let (m_lo, m_hi) = (ray.masses()[0], ray.masses()[1]);
        let w_lo = residual[lo] / m_lo;
        let w_hi = residual[hi] / m_hi;
        let weight = w_lo.min(w_hi);
        if w_lo <= w_hi {
            residual[lo] = T::zero();
            residual[hi] -= weight * m_hi;
        } else {
            residual[hi] = T::zero();
            residual[lo] -= weight * m_lo;
        }
        out.push((ray, weight));
    }
    Ok(out)
}

/// Extrema of a cross moment over a class, with the rays attaining them.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentBounds<T> {
    pub order: usize,
    pub min: T,
    pub max: T,
    pub argmin: RayDensity<T>,
    pub argmax: RayDensity<T>,
}

/// Range of the cross moment `mu_order` over `E_d(p)`.
///
/// Order 2 uses the closed forms (`max = p` on `r_(0,d)`; the minimum sits
/// on the adjacent pair `r_(j1_max, j1_max + 1)` or on the point ray);
/// other orders scan every ray.
pub fn moment_bounds<T: Scalar>(spec: &ClassSpec<T>, order: usize) -> Result<MomentBounds<T>> {
    spec.require_mean_only()?;
    if order < 1 || order > spec.d() {
        return Err(Error::OrderOutOfRange { order, d: spec.d() });
    }
    if order == 2 {
        let (min, argmin) = min_mu2(spec)?;
        return Ok(MomentBounds {
            order,
            min,
            max: spec.p(),
            argmin,
            argmax: two_point_ray(spec, 0, spec.d())?,
        });
    }
    scan_moment_bounds(&enumerate_rays(spec)?, order)
}

/// Cross-moment extrema over an explicit ray list. Ties keep the first ray.
pub fn scan_moment_bounds<T: Scalar>(
    rays: &[RayDensity<T>],
    order: usize,
) -> Result<MomentBounds<T>> {
    let first = rays.first().ok_or(Error::EmptyRaySet)?;
    let mut best_min = (first.to_pmf().cross_moment(order)?, first);
    let mut best_max = best_min;
    for ray in &rays[1..] {
        let mu = ray.to_pmf().cross_moment(order)?;
        if mu < best_min.0 {
            best_min = (mu, ray);
        }
        if mu > best_max.0 {
            best_max = (mu, ray);
        }
    }
    Ok(MomentBounds {
        order,
        min: best_min.0,
        max: best_max.0,
        argmin: best_min.1.clone(),
        argmax: best_max.1.clone(),
    })
}

fn min_mu2<T: Scalar>(spec: &ClassSpec<T>) -> Result<(T, RayDensity<T>)> {
    let d = T::from_index(spec.d());
    let pairs = d * (d - T::one());
    let pd = spec.pd();
    if spec.pd_is_integer() {
        let p = spec.p();
        Ok((p * (pd - T::one()) / (d - T::one()), point_ray(spec)?))
    } else {
        let j = T::from_index(spec.j1_max());
        let one = T::one();
        let two = T::lit(2.0);
        // E[R^2] of r_(j, j+1) is -j(j+1) + (2j+1) pd
        let second = -j * (j + one) + (two * j + one) * pd;
        Ok((
            (second - pd) / pairs,
            two_point_ray(spec, spec.j1_max(), spec.j2_min())?,
        ))
    }
}

/// Range of the equicorrelation over `E_d(p)`; the maximum is always 1.
pub fn correlation_bounds<T: Scalar>(spec: &ClassSpec<T>) -> Result<(T, T)> {
    spec.require_mean_only()?;
    if spec.d() < 2 {
        return Err(Error::OrderOutOfRange {
            order: 2,
            d: spec.d(),
        });
    }
    let (mu2_min, _) = min_mu2(spec)?;
    let p = spec.p();
    Ok(((mu2_min - p * p) / (p * spec.q()), T::one()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn spec(d: usize, p: f64) -> ClassSpec<f64> {
        ClassSpec::new(d, p).unwrap()
    }

    #[test]
    fn two_point_ray_examples() {
        let r = two_point_ray(&spec(100, 0.003), 0, 100).unwrap();
        assert_relative_eq!(r.masses()[0], 0.997, epsilon = 1e-15);
        assert_relative_eq!(r.masses()[1], 0.003, epsilon = 1e-15);

        let r = two_point_ray(&spec(100, 0.003), 0, 29).unwrap();
        assert_relative_eq!(r.masses()[0], 28.7 / 29.0, epsilon = 1e-15);
        assert_relative_eq!(r.masses()[1], 0.3 / 29.0, epsilon = 1e-15);
        assert_relative_eq!(r.mean(), 0.3, epsilon = 1e-13);

        let r = two_point_ray(&spec(100, 0.017), 1, 2).unwrap();
        assert_relative_eq!(r.masses()[0], 0.3, epsilon = 1e-13);
        assert_relative_eq!(r.masses()[1], 0.7, epsilon = 1e-13);
    }

    #[test]
    fn two_point_ray_rejects_pairs_not_straddling_pd() {
        let s = spec(100, 0.017);
        assert!(matches!(
            two_point_ray(&s, 2, 5),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            two_point_ray(&s, 0, 1),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            two_point_ray(&s, 0, 101),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn point_ray_examples() {
        let r = point_ray(&spec(4, 0.5)).unwrap();
        assert_eq!((r.support(), r.masses()), (&[2usize][..], &[1.0][..]));
        let r = point_ray(&spec(10, 0.3)).unwrap();
        assert_eq!(r.support(), &[3]);
        assert!(matches!(
            point_ray(&spec(100, 0.003)),
            Err(Error::NonIntegerMean { .. })
        ));
    }

    #[test]
    fn ray_counts_match_scenarios() {
        assert_eq!(enumerate_rays(&spec(100, 0.003)).unwrap().len(), 100);
        assert_eq!(enumerate_rays(&spec(100, 0.017)).unwrap().len(), 198);
        assert_eq!(enumerate_rays(&spec(100, 0.266)).unwrap().len(), 1998);
        let small = enumerate_rays(&spec(4, 0.5)).unwrap();
        assert_eq!(small.len(), 5);
        assert_eq!(small.last().unwrap().support(), &[2]);
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let rays = enumerate_rays(&spec(20, 0.33)).unwrap();
        let supports: Vec<_> = rays.iter().map(|r| r.support().to_vec()).collect();
        let mut sorted = supports.clone();
        sorted.sort();
        assert_eq!(supports, sorted);
    }

    #[test]
    fn decompose_single_ray() {
        let s = spec(100, 0.017);
        let ray = two_point_ray(&s, 1, 40).unwrap();
        let parts = decompose(&ray.to_pmf(), &s).unwrap();
        assert_eq!(parts.len(), 1);
        assert_eq!(parts[0].0.support(), &[1, 40]);
        assert_relative_eq!(parts[0].1, 1.0, epsilon = 1e-14);
    }

    fn reconstruction_error(pmf: &DefaultCountPmf<f64>, parts: &[(RayDensity<f64>, f64)]) -> f64 {
        let mut acc = vec![0.0; pmf.d() + 1];
        for (r, w) in parts {
            for (j, m) in r.atoms() {
                acc[j] += w * m;
            }
        }
        acc.iter()
            .zip(pmf.probs())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    #[test]
    fn decompose_binomial_and_uniform() {
        let s = spec(4, 0.5);
        let bin = DefaultCountPmf::new(
            4,
            vec![1.0 / 16.0, 4.0 / 16.0, 6.0 / 16.0, 4.0 / 16.0, 1.0 / 16.0],
        )
        .unwrap();
        let parts = decompose(&bin, &s).unwrap();
        assert!(reconstruction_error(&bin, &parts) < 1e-12);
        assert!(parts.iter().all(|(_, w)| *w >= 0.0));
        assert_relative_eq!(parts.iter().map(|p| p.1).sum::<f64>(), 1.0, epsilon = 1e-14);

        let uni = DefaultCountPmf::new(4, vec![0.2; 5]).unwrap();
        let parts = decompose(&uni, &s).unwrap();
        assert!(reconstruction_error(&uni, &parts) < 1e-12);
        assert!(parts.len() <= 5);
    }

    #[test]
    fn decompose_rejects_wrong_mean() {
        let s = spec(4, 0.3);
        let uni = DefaultCountPmf::new(4, vec![0.2; 5]).unwrap();
        assert!(matches!(
            decompose(&uni, &s),
            Err(Error::MeanMismatch { .. })
        ));
    }

    #[test]
    fn moment_bound_tables() {
        let s = spec(100, 0.266);
        let b2 = moment_bounds(&s, 2).unwrap();
        assert_eq!(
            ((b2.min * 1e3).round(), (b2.max * 1e3).round()),
            (69.0, 266.0)
        );
        assert_eq!(b2.argmax.support(), &[0, 100]);
        assert_eq!(b2.argmin.support(), &[26, 27]);
        let b3 = moment_bounds(&s, 3).unwrap();
        assert_eq!(
            ((b3.min * 1e3).round(), (b3.max * 1e3).round()),
            (17.0, 266.0)
        );
        let b4 = moment_bounds(&s, 4).unwrap();
        assert_eq!(
            ((b4.min * 1e3).round(), (b4.max * 1e3).round()),
            (4.0, 266.0)
        );

        let b = moment_bounds(&spec(100, 0.003), 2).unwrap();
        assert_eq!(b.min, 0.0);
        assert_relative_eq!(b.max, 0.003);
    }

    #[test]
    fn order_two_closed_form_matches_scan() {
        for (d, p) in [(100, 0.266), (100, 0.017), (10, 0.3), (7, 0.5), (30, 0.71)] {
            let s = spec(d, p);
            let closed = moment_bounds(&s, 2).unwrap();
            let scan = scan_moment_bounds(&enumerate_rays(&s).unwrap(), 2).unwrap();
            assert_relative_eq!(closed.min, scan.min, epsilon = 1e-10);
            assert_relative_eq!(closed.max, scan.max, epsilon = 1e-10);
            assert_eq!(closed.argmin.support(), scan.argmin.support());
            assert_eq!(closed.argmax.support(), scan.argmax.support());
        }
    }

    #[test]
    fn correlation_bound_examples() {
        let (lo, hi) = correlation_bounds(&spec(100, 0.003)).unwrap();
        assert_eq!(((lo * 1e3).round(), hi), (-3.0, 1.0));
        let (lo, _) = correlation_bounds(&spec(100, 0.017)).unwrap();
        assert_eq!((lo * 1e3).round(), -9.0);
        let (lo, _) = correlation_bounds(&spec(100, 0.266)).unwrap();
        assert_eq!((lo * 1e2).round(), -1.0);
        let (lo, hi) = correlation_bounds(&spec(2, 0.5)).unwrap();
        assert_relative_eq!(lo, -1.0, epsilon = 1e-15);
        assert_eq!(hi, 1.0);
        // integer pd: -1/(d-1)
        let (lo, _) = correlation_bounds(&spec(10, 0.3)).unwrap();
        assert_relative_eq!(lo, -1.0 / 9.0, epsilon = 1e-14);
    }
}
