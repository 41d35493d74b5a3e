//! Table builders behind the subcommands. Each numeric cell is the output
//! of one library call, rounded only for display.

use std::collections::BTreeMap;
use std::sync::Arc;

use exrays_core::{rays_mean, risk, BetaMix, Class, CountPmf, Ray};

use crate::cache::{self, RayCache};
use crate::config::{Scenario, ScenarioConfig};
use crate::error::{CliError, Result};
use crate::tables::{Cell, Table, ES_DECIMALS, MOMENT_DECIMALS};

/// Ray sets shared across the tables of one run, optionally backed by the
/// on-disk cache.
#[derive(Debug, Default)]
pub struct RaySource {
    cache: Option<RayCache>,
    memo: BTreeMap<String, Arc<Vec<Ray>>>,
}

impl RaySource {
    pub fn new(cache: Option<RayCache>) -> Self {
        Self {
            cache,
            memo: BTreeMap::new(),
        }
    }

    pub fn rays(&mut self, spec: &Class) -> Result<Arc<Vec<Ray>>> {
        let key = RayCache::key(spec);
        if let Some(r) = self.memo.get(&key) {
            return Ok(Arc::clone(r));
        }
        let rays = Arc::new(cache::rays_for(spec, self.cache.as_ref())?);
        self.memo.insert(key, Arc::clone(&rays));
        Ok(rays)
    }
}

fn rho_suffix(rho: f64) -> String {
    // 1/6 -> "1-6" for the three tabulated correlations, else the plain value
    for (n, d) in [(1, 6), (1, 2), (5, 6)] {
        if rho == n as f64 / d as f64 {
            return format!("{n}-{d}");
        }
    }
    rho.to_string()
}

fn class_title(cfg: &ScenarioConfig) -> String {
    let p = format!("{}%", cfg.p * 100.0);
    let p = p.replace(".0%", "%");
    match cfg.rho {
        None => format!("E_{}({p})", cfg.d),
        Some(r) => format!("E_{}({p}, rho={})", cfg.d, rho_suffix(r).replace('-', "/")),
    }
}

fn support_text(s: &[usize]) -> Cell {
    Cell::Text(
        s.iter()
            .map(|j| j.to_string())
            .collect::<Vec<_>>()
            .join(";"),
    )
}

fn mean_only(cfg: &ScenarioConfig) -> Result<Class> {
    if cfg.rho.is_some() {
        return Err(CliError::Input(
            "this table is defined for mean-only classes (drop --rho)".into(),
        ));
    }
    cfg.class()
}

/// Moment bounds of orders 1 to 4 and the correlation range.
pub fn moments_table(cfg: &ScenarioConfig) -> Result<Table> {
    let spec = mean_only(cfg)?;
    let mut t = Table::new(
        format!("moments_{}", cfg.label()),
        format!("Moments {}", class_title(cfg)),
        &["order", "min", "max"],
    );
    for order in 1..=4.min(cfg.d) {
        let b = rays_mean::moment_bounds(&spec, order)?;
        t.push(vec![
            Cell::Text(order.to_string()),
            Cell::real(b.min, MOMENT_DECIMALS),
            Cell::real(b.max, MOMENT_DECIMALS),
        ]);
    }
    let (lo, hi) = rays_mean::correlation_bounds(&spec)?;
    t.push(vec![
        Cell::Text("rho".into()),
        Cell::real(lo, MOMENT_DECIMALS),
        Cell::real(hi, MOMENT_DECIMALS),
    ]);
    Ok(t)
}

/// Ray-scan VaR range per confidence level.
pub fn var_table(cfg: &ScenarioConfig, rays: &[Ray]) -> Result<Table> {
    mean_only(cfg)?;
    let mut t = Table::new(
        format!("var_{}", cfg.label()),
        format!("VaR bounds {}", class_title(cfg)),
        &["alpha", "var_min", "var_max"],
    );
    for &alpha in &cfg.alphas {
        let v = risk::var_bounds_scan(rays, alpha)?;
        t.push(vec![Cell::Plain(alpha), Cell::Int(v.min), Cell::Int(v.max)]);
    }
    Ok(t)
}

/// Ray-scan ES range per confidence level.
pub fn es_table(cfg: &ScenarioConfig, rays: &[Ray]) -> Result<Table> {
    mean_only(cfg)?;
    let mut t = Table::new(
        format!("es_{}", cfg.label()),
        format!("ES over rays {}", class_title(cfg)),
        &["alpha", "es_min", "es_max"],
    );
    for &alpha in &cfg.alphas {
        let e = risk::es_bounds_scan(rays, alpha)?;
        t.push(vec![
            Cell::Plain(alpha),
            Cell::real(e.min, ES_DECIMALS),
            Cell::real(e.max, ES_DECIMALS),
        ]);
    }
    Ok(t)
}

/// VaR range of a correlated class next to the moment-matched beta VaR.
pub fn corr_var_table(cfg: &ScenarioConfig, rays: &[Ray]) -> Result<Table> {
    let rho = cfg
        .rho
        .ok_or_else(|| CliError::Input("a correlation (--rho) is required".into()))?;
    let beta = BetaMix::calibrate(cfg.p, rho)?;
    let mut t = Table::new(
        format!("corr_var_{}_{}", cfg.label(), rho_suffix(rho)),
        format!("VaR bounds {}", class_title(cfg)),
        &["alpha", "var_min", "var_max", "beta_var"],
    );
    for &alpha in &cfg.alphas {
        let v = risk::var_bounds_scan(rays, alpha)?;
        t.push(vec![
            Cell::Plain(alpha),
            Cell::Int(v.min),
            Cell::Int(v.max),
            Cell::Int(beta.var(cfg.d, alpha)?),
        ]);
    }
    Ok(t)
}

/// Everything known about VaR and ES at each level: ray-scan extrema, the
/// proven ES envelope and, for correlated classes, the beta benchmark
/// (`beta_es` is an extension beyond the tabulated beta VaR).
pub fn bounds_table(cfg: &ScenarioConfig, rays: &[Ray]) -> Result<Table> {
    let spec = cfg.class()?;
    let beta = cfg.beta().transpose()?;
    let mut columns = vec![
        "alpha",
        "var_min",
        "var_max",
        "es_min",
        "es_max",
        "es_env_lower",
        "es_env_upper",
        "es_env_attained",
    ];
    if beta.is_some() {
        columns.extend(["beta_var", "beta_es"]);
    }
    columns.extend(["var_argmin", "var_argmax", "es_argmin", "es_argmax"]);
    let name = match cfg.rho {
        None => format!("bounds_{}", cfg.label()),
        Some(r) => format!("bounds_{}_{}", cfg.label(), rho_suffix(r)),
    };
    let mut t = Table::new(name, format!("Risk bounds {}", class_title(cfg)), &columns);
    for &alpha in &cfg.alphas {
        let b = risk::risk_bounds(rays, alpha)?;
        let env = risk::es_envelope(&spec, rays, alpha)?;
        let mut row = vec![
            Cell::Plain(alpha),
            Cell::Int(b.var_min),
            Cell::Int(b.var_max),
            Cell::real(b.es_min, ES_DECIMALS),
            Cell::real(b.es_max, ES_DECIMALS),
            Cell::real(env.lower, ES_DECIMALS),
            Cell::real(env.upper, ES_DECIMALS),
            Cell::Bool(env.upper_attained),
        ];
        if let Some(beta) = &beta {
            row.push(Cell::Int(beta.var(cfg.d, alpha)?));
            row.push(Cell::real(beta.es(cfg.d, alpha)?, ES_DECIMALS));
        }
        row.extend([
            support_text(&b.var_argmin),
            support_text(&b.var_argmax),
            support_text(&b.es_argmin),
            support_text(&b.es_argmax),
        ]);
        t.push(row);
    }
    Ok(t)
}

/// Equispaced correlation grid `k / n` for `k = 0..n`, i.e. `n` points in
/// `[0, 1)`; the default `n = 12` ends at `11/12`.
pub fn rho_grid(n: usize) -> Vec<f64> {
    (0..n).map(|k| k as f64 / n as f64).collect()
}

/// VaR range and beta VaR along a correlation grid, in long format.
/// Infeasible points become rows with a note instead of failing the sweep.
pub fn sweep_table(cfg: &ScenarioConfig, grid: usize, source: &mut RaySource) -> Result<Table> {
    if cfg.rho.is_some() {
        return Err(CliError::Input(
            "sweep spans its own correlation grid (drop --rho)".into(),
        ));
    }
    if grid == 0 {
        return Err(CliError::Input("--grid must be at least 1".into()));
    }
    let mut t = Table::new(
        format!("sweep_{}", cfg.label()),
        format!("VaR bounds along rho {}", class_title(cfg)),
        &["rho", "alpha", "var_min", "var_max", "beta_var", "note"],
    );
    for rho in rho_grid(grid) {
        let point = ScenarioConfig {
            rho: Some(rho),
            ..cfg.clone()
        };
        let rays = point.class().and_then(|spec| source.rays(&spec));
        let rays = match rays {
            Ok(r) => r,
            Err(e) => {
                for &alpha in &cfg.alphas {
                    t.push(vec![
                        Cell::Plain(rho),
                        Cell::Plain(alpha),
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Empty,
                        Cell::Text(format!("infeasible: {e}")),
                    ]);
                }
                continue;
            }
        };
        let beta = BetaMix::calibrate(cfg.p, rho).ok();
        for &alpha in &cfg.alphas {
            let v = risk::var_bounds_scan(&rays, alpha)?;
            let (beta_cell, note) = match &beta {
                Some(b) => (Cell::Int(b.var(cfg.d, alpha)?), Cell::Empty),
                None => (Cell::Empty, Cell::Text("beta mixing needs rho > 0".into())),
            };
            t.push(vec![
                Cell::Plain(rho),
                Cell::Plain(alpha),
                Cell::Int(v.min),
                Cell::Int(v.max),
                beta_cell,
                note,
            ]);
        }
    }
    Ok(t)
}

/// Summary statistics of a count pmf.
pub fn stats_table(pmf: &CountPmf, alphas: &[f64]) -> Result<Table> {
    let d = pmf.d();
    let p = pmf.mean() / d as f64;
    let mut t = Table::new(
        "stats",
        format!("Count pmf, d={d}"),
        &["statistic", "value"],
    );
    let mut add = |name: String, cell: Cell| t.push(vec![Cell::Text(name), cell]);
    add("d".into(), Cell::Int(d));
    add("mean".into(), Cell::Plain(pmf.mean()));
    add("p".into(), Cell::Plain(p));
    add("second_moment".into(), Cell::Plain(pmf.second_moment()));
    if d >= 2 {
        add("mu2".into(), Cell::Plain(pmf.cross_moment(2)?));
        if p > 0.0 && p < 1.0 {
            add("rho".into(), Cell::Plain(pmf.correlation(p)?));
        }
    }
    for &alpha in alphas {
        add(format!("var@{alpha}"), Cell::Int(pmf.var(alpha)?));
        add(format!("es@{alpha}"), Cell::Plain(pmf.es(alpha)?));
    }
    Ok(t)
}

/// Convex decomposition of a pmf into rays of `E_d(p)` with `p` its own
/// mean over `d`.
pub fn decompose_table(pmf: &CountPmf) -> Result<Table> {
    let d = pmf.d();
    let spec = Class::new(d, pmf.mean() / d as f64)?;
    let parts = rays_mean::decompose(pmf, &spec)?;
    let mut t = Table::new(
        "decomposition",
        format!("Ray decomposition, d={d}, p={}", spec.p()),
        &["weight", "support", "masses"],
    );
    for (ray, w) in parts {
        let masses = ray
            .masses()
            .iter()
            .map(|m| format!("{m:e}"))
            .collect::<Vec<_>>()
            .join(";");
        t.push(vec![
            Cell::Plain(w),
            support_text(ray.support()),
            Cell::Text(masses),
        ]);
    }
    Ok(t)
}

/// All tables of one rating scenario: moments, VaR and ES for the
/// mean-only class, then one correlated VaR table per `rho`.
pub fn scenario_tables(
    scenario: Scenario,
    rhos: &[f64],
    source: &mut RaySource,
) -> Result<Vec<Table>> {
    let cfg = ScenarioConfig::scenario(scenario, None);
    let rays = source.rays(&cfg.class()?)?;
    let mut out = vec![
        moments_table(&cfg)?,
        var_table(&cfg, &rays)?,
        es_table(&cfg, &rays)?,
    ];
    for &rho in rhos {
        let c = ScenarioConfig::scenario(scenario, Some(rho));
        let rays = source.rays(&c.class()?)?;
        out.push(corr_var_table(&c, &rays)?);
    }
    Ok(out)
}
