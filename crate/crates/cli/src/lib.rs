//! Command-line front end for `exrays-core`: ray-set export and caching,
//! bound tables, correlation sweeps and the full table reproduction.

pub mod cache;
pub mod commands;
pub mod config;
pub mod error;
pub mod expected;
pub mod pmf_io;
pub mod rayset;
pub mod reproduce;
pub mod tables;

pub use config::{OutputFormat, Scenario, ScenarioConfig};
pub use error::{CliError, Result};
