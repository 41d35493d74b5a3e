//! Extremal ray densities of exchangeable Bernoulli default models and the
//! VaR/ES bounds they imply.
//!
//! With equal exposures the portfolio loss is the default count `S_d` over
//! `d`, and an exchangeable default law is the same thing as a pmf of
//! `S_d`. Fixing the marginal default probability `p` (and optionally the
//! default equicorrelation `rho`) cuts out a polytope of count pmfs whose
//! vertices, the ray densities, are known in closed form:
//!
//! * [`rays_mean`]: rays of `E_d(p)`, two-point supports straddling `pd`;
//! * [`rays_corr`]: rays of `E_d(p, rho)`, supports of at most three points;
//! * [`risk`]: VaR/ES extrema over a ray set, plus the closed-form VaR range
//!   of `E_d(p)`;
//! * [`beta_mix`]: the moment-matched beta-binomial benchmark.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod beta_mix;
pub mod class;
pub mod error;
pub mod pmf;
pub mod ray;
pub mod rays_corr;
pub mod rays_mean;
pub mod risk;
pub mod scalar;
pub mod special;

pub use beta_mix::BetaMixParams;
pub use class::ClassSpec;
pub use error::{Error, Result};
pub use pmf::{DefaultCountPmf, ExchangeablePmfSummary};
pub use ray::{ClassTag, RayDensity};
pub use rays_corr::{CorrSystemCoeffs, Membership};
pub use rays_mean::MomentBounds;
pub use risk::{EsBounds, EsEnvelope, RiskBounds, VarBounds};
pub use scalar::Scalar;

/// Library version; part of ray-set cache keys.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type CountPmf = DefaultCountPmf<f64>;
pub type CountPmf32 = DefaultCountPmf<f32>;
pub type ExchangeableSummary = ExchangeablePmfSummary<f64>;
pub type Class = ClassSpec<f64>;
pub type Class32 = ClassSpec<f32>;
pub type Ray = RayDensity<f64>;
pub type Ray32 = RayDensity<f32>;
pub type Bounds = RiskBounds<f64>;
pub type BetaMix = BetaMixParams<f64>;
