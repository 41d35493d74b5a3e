//! Scenario selection and numeric argument parsing.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use exrays_core::{BetaMix, Class};
use num_rational::Ratio;

use crate::error::{CliError, Result};

pub const DEFAULT_D: usize = 100;
pub const DEFAULT_ALPHAS: [f64; 3] = [0.90, 0.95, 0.99];
pub const DEFAULT_GRID: usize = 12;

/// Rating classes with their one-year marginal default probabilities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Scenario {
    A,
    Bbb,
    B,
}

impl Scenario {
    pub const ALL: [Scenario; 3] = [Scenario::A, Scenario::Bbb, Scenario::B];

    pub fn p(self) -> f64 {
        match self {
            Scenario::A => 0.003,
            Scenario::Bbb => 0.017,
            Scenario::B => 0.266,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Scenario::A => "A",
            Scenario::Bbb => "BBB",
            Scenario::B => "B",
        }
    }
}

impl fmt::Display for Scenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Scenario {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "A" => Ok(Scenario::A),
            "BBB" => Ok(Scenario::Bbb),
            "B" => Ok(Scenario::B),
            other => Err(CliError::Input(format!(
                "unknown scenario {other:?} (expected A, BBB or B)"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl OutputFormat {
    pub fn extension(self) -> &'static str {
        match self {
            OutputFormat::Csv => "csv",
            OutputFormat::Json => "json",
        }
    }
}

impl FromStr for OutputFormat {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(CliError::Input(format!(
                "unknown format {other:?} (expected csv or json)"
            ))),
        }
    }
}

/// Parses `"1/6"` as an exact fraction (rounded once to the nearest `f64`)
/// or a plain decimal such as `"0.1667"`.
pub fn parse_real(s: &str) -> Result<f64> {
    let s = s.trim();
    let bad = || CliError::Input(format!("cannot parse {s:?} as a number or fraction"));
    if s.contains('/') {
        let r: Ratio<i64> = s.parse().map_err(|_| bad())?;
        // correctly rounded for |numer|, denom < 2^53
        return Ok(*r.numer() as f64 / *r.denom() as f64);
    }
    let x: f64 = s.parse().map_err(|_| bad())?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(bad())
    }
}

/// One confidence level in `(0, 1)`.
pub fn parse_alpha(s: &str) -> Result<f64> {
    let a = parse_real(s)?;
    if a > 0.0 && a < 1.0 {
        Ok(a)
    } else {
        Err(CliError::Input(format!("alpha {a} is outside (0, 1)")))
    }
}

/// Comma-separated confidence levels.
pub fn parse_alphas(s: &str) -> Result<Vec<f64>> {
    s.split(',').map(parse_alpha).collect()
}

/// Fully resolved inputs of one subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub d: usize,
    pub p: f64,
    pub scenario: Option<Scenario>,
    pub rho: Option<f64>,
    pub alphas: Vec<f64>,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
}

impl ScenarioConfig {
    /// Resolves `p` from either an explicit value or a scenario and checks
    /// the class invariants.
    pub fn new(
        d: usize,
        p: Option<f64>,
        scenario: Option<Scenario>,
        rho: Option<f64>,
    ) -> Result<Self> {
        let p = match (p, scenario) {
            (Some(_), Some(_)) => {
                return Err(CliError::Input(
                    "give either --p or --scenario, not both".into(),
                ))
            }
            (Some(p), None) => p,
            (None, Some(s)) => s.p(),
            (None, None) => {
                return Err(CliError::Input(
                    "one of --p or --scenario is required".into(),
                ))
            }
        };
        let cfg = Self {
            d,
            p,
            scenario,
            rho,
            alphas: DEFAULT_ALPHAS.to_vec(),
            format: OutputFormat::Csv,
            cache: None,
        };
        cfg.class()?;
        Ok(cfg)
    }

    pub fn scenario(s: Scenario, rho: Option<f64>) -> Self {
        Self::new(DEFAULT_D, None, Some(s), rho).expect("built-in scenarios are valid")
    }

    pub fn with_alphas(mut self, alphas: Vec<f64>) -> Self {
        self.alphas = alphas;
        self
    }

    pub fn with_format(mut self, format: OutputFormat) -> Self {
        self.format = format;
        self
    }

    pub fn with_cache(mut self, cache: Option<PathBuf>) -> Self {
        self.cache = cache;
        self
    }

    /// The class `E_d(p)` or `E_d(p, rho)`.
    pub fn class(&self) -> Result<Class> {
        Ok(match self.rho {
            None => Class::new(self.d, self.p)?,
            Some(rho) => Class::with_rho(self.d, self.p, rho)?,
        })
    }

    pub fn beta(&self) -> Option<Result<BetaMix>> {
        self.rho
            .map(|rho| BetaMix::calibrate(self.p, rho).map_err(Into::into))
    }

    /// Short label such as `BBB` or `p=0.25`.
    pub fn label(&self) -> String {
        match self.scenario {
            Some(s) => s.label().to_string(),
            None => format!("p={}", self.p),
        }
    }
}
