//! Scalar abstraction shared by every numeric routine in the crate.
//!
//! All algorithms are written against [`Scalar`], which is implemented for
//! `f32` and `f64`. Each precision carries its own set of tolerances: the
//! `f64` values are the ones the public contracts are stated in, the `f32`
//! values are scaled to single-precision rounding.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive, NumAssign};

/// Floating point type usable by the ray and risk routines.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumAssign + Sum + Debug + Display + Send + Sync + 'static
{
    /// Absolute tolerance on a single probability mass. Masses above `-mass_tol`
    /// are nonnegative, masses within `mass_tol` of zero are dropped, and CDF
    /// ties at a confidence level are resolved with it.
    fn mass_tol() -> Self;

    /// Tolerance on the total mass of a pmf.
    fn norm_tol() -> Self;

    /// Per-obligor tolerance on linear moment constraints; scaled by `d`
    /// (first moment) or `d^2` (second moment) at the call site.
    fn moment_tol() -> Self;

    /// Guard used when a real quantity is compared against an integer
    /// (integrality of `pd`, floor/ceil at exact boundaries).
    fn snap_tol() -> Self;

    /// Converts an `f64` literal. Never fails for the finite constants used
    /// in this crate.
    #[inline]
    fn lit(x: f64) -> Self {
        Self::from_f64(x).expect("finite literal")
    }

    #[inline]
    fn from_index(i: usize) -> Self {
        Self::from_usize(i).expect("index representable")
    }

    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f64 {
    fn mass_tol() -> Self {
        1e-12
    }
    fn norm_tol() -> Self {
        1e-10
    }
    fn moment_tol() -> Self {
        1e-9
    }
    fn snap_tol() -> Self {
        1e-9
    }
}

impl Scalar for f32 {
    fn mass_tol() -> Self {
        1e-6
    }
    fn norm_tol() -> Self {
        1e-4
    }
    fn moment_tol() -> Self {
        1e-4
    }
    fn snap_tol() -> Self {
        1e-4
    }
}

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy)]
pub(crate) struct CompensatedSum<T> {
    sum: T,
    carry: T,
}

impl<T: Scalar> CompensatedSum<T> {
    pub(crate) fn new() -> Self {
        Self {
            sum: T::zero(),
            carry: T::zero(),
        }
    }

    pub(crate) fn add(&mut self, x: T) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> T {
        self.sum + self.carry
    }
}

pub(crate) fn compensated_sum<T: Scalar, I: IntoIterator<Item = T>>(xs: I) -> T {
    let mut acc = CompensatedSum::new();
    for x in xs {
        acc.add(x);
    }
    acc.value()
}
