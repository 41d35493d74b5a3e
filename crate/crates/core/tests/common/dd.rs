//! Brute-force double description in exact rational arithmetic.
//!
//! Computes the extreme rays of `{z in R^n : A z = 0, z >= 0}` by starting
//! from the unit vectors of the nonnegative orthant and intersecting with
//! one hyperplane at a time. Adjacency of a positive/negative pair is decided
//! combinatorially: the common zero set of the pair must not be contained in
//! the zero set of any third generator.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};

pub type Q = BigRational;

pub fn q(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

pub fn qi(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn dot(a: &[Q], z: &[Q]) -> Q {
    a.iter().zip(z).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

fn zero_set(z: &[Q]) -> Vec<usize> {
    z.iter()
        .enumerate()
        .filter(|(_, x)| x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|i| big.binary_search(i).is_ok())
}

/// Extreme rays of `{z : rows . z = 0, z >= 0}` in `R^n`, each scaled to
/// unit total mass and sorted by support.
pub fn extreme_rays(rows: &[Vec<Q>], n: usize) -> Vec<Vec<Q>> {
    let mut gens: Vec<Vec<Q>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Q::one() } else { Q::zero() })
                .collect()
        })
        .collect();

    for a in rows {
        let vals: Vec<Q> = gens.iter().map(|g| dot(a, g)).collect();
        let zeros: Vec<Vec<usize>> = gens.iter().map(|g| zero_set(g)).collect();
        let mut next: Vec<Vec<Q>> = Vec::new();
        for (g, v) in gens.iter().zip(&vals) {
            if v.is_zero() {
                next.push(g.clone());
            }
        }
        for (ip, vp) in vals.iter().enumerate().filter(|(_, v)| v.is_positive()) {
            for (im, vm) in vals.iter().enumerate().filter(|(_, v)| v.is_negative()) {
                let common: Vec<usize> = zeros[ip]
                    .iter()
                    .copied()
                    .filter(|i| zeros[im].binary_search(i).is_ok())
                    .collect();
                let adjacent = (0..gens.len())
                    .filter(|&k| k != ip && k != im)
                    .all(|k| !is_subset(&common, &zeros[k]));
                if !adjacent {
                    continue;
                }
                // vp * g_minus - vm * g_plus lies on the hyperplane
                let combo: Vec<Q> = gens[im]
                    .iter()
                    .zip(&gens[ip])
                    .map(|(m, p)| vp * m - vm * p)
                    .collect();
                next.push(combo);
            }
        }
        gens = next;
    }

    let mut out: Vec<Vec<Q>> = gens
        .into_iter()
        .map(|g| {
            let total = g.iter().fold(Q::zero(), |acc, x| acc + x);
            g.into_iter().map(|x| x / &total).collect()
        })
        .collect();
    out.sort_by_key(|g| support(g));
    out.dedup();
    out
}

pub fn support(g: &[Q]) -> Vec<usize> {
    g.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, _)| i)
        .collect()
}

/// Rows `j - pd` (and `j^2 - E[S^2]` when `mu2` is given) of the class system.
pub fn class_rows(d: usize, p: &Q, mu2: Option<&Q>) -> Vec<Vec<Q>> {
    let pd = p * qi(d as i64);
    let mut rows = vec![(0..=d).map(|j| qi(j as i64) - &pd).collect::<Vec<_>>()];
    if let Some(mu2) = mu2 {
        let pairs = qi((d * (d - 1)) as i64);
        let m2 = &pd + pairs * mu2;
        rows.push((0..=d).map(|j| qi((j * j) as i64) - &m2).collect());
    }
    rows
}

/// `(support, masses as f64)` for each oracle ray.
pub fn oracle_rays(d: usize, p: &Q, mu2: Option<&Q>) -> Vec<(Vec<usize>, Vec<f64>)> {
    extreme_rays(&class_rows(d, p, mu2), d + 1)
        .into_iter()
        .map(|g| {
            let s = support(&g);
            let m = s.iter().map(|&i| g[i].to_f64().unwrap()).collect();
            (s, m)
        })
        .collect()
}

/// `mu2 = rho p q + p^2`.
pub fn mu2_of(p: &Q, rho: &Q) -> Q {
    let qq = Q::one() - p;
    rho * p * qq + p * p
}

/// Draws feasible `(d, p, rho)` with `d <= 6`, `p = k/10`, `rho = m/24`.
pub fn feasible_corr_cases(n: usize, seed: u64) -> Vec<(usize, i64, i64)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < n {
        let d = rng.gen_range(2..=6usize);
        let k = rng.gen_range(1..=9i64);
        let m = rng.gen_range(-23..=24i64);
        let p = q(k, 10);
        let mu2 = mu2_of(&p, &q(m, 24));
        // feasible iff the oracle cone is nontrivial
        if oracle_rays(d, &p, Some(&mu2)).is_empty() {
            continue;
        }
        out.push((d, k, m));
    }
    out
}
