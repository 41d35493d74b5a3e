//! Regenerates every published table and the correlation sweeps, writes
//! them with a checksummed manifest and diffs them against reference
//! values.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use exrays_core::VERSION;
use log::info;
use serde::Serialize;

use crate::cache::{sha256_hex, RayCache};
use crate::commands::{scenario_tables, sweep_table, RaySource};
use crate::config::{OutputFormat, Scenario, ScenarioConfig, DEFAULT_GRID};
use crate::error::{CliError, Result};
use crate::expected::{compare, CellDiff, ExpectedTable};
use crate::tables::Table;

/// Correlations of the published correlated tables.
pub const TABLE_RHOS: [f64; 3] = [1.0 / 6.0, 1.0 / 2.0, 5.0 / 6.0];

#[derive(Debug, Clone)]
pub struct ReproduceOptions {
    pub out: PathBuf,
    pub format: OutputFormat,
    pub cache: Option<PathBuf>,
    pub grid: usize,
}

impl ReproduceOptions {
    pub fn new(out: impl Into<PathBuf>) -> Self {
        Self {
            out: out.into(),
            format: OutputFormat::Csv,
            cache: None,
            grid: DEFAULT_GRID,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ManifestEntry {
    pub file: String,
    pub kind: &'static str,
    pub rows: usize,
    pub sha256: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Manifest {
    pub version: &'static str,
    pub d: usize,
    pub alphas: Vec<f64>,
    pub rho_grid: usize,
    pub tables: usize,
    pub sweeps: usize,
    pub mismatches: usize,
    pub files: Vec<ManifestEntry>,
}

#[derive(Debug)]
pub struct ReproduceReport {
    pub tables: Vec<Table>,
    pub sweeps: Vec<Table>,
    pub diffs: Vec<CellDiff>,
    pub manifest: Manifest,
    pub manifest_path: PathBuf,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<String> {
    let path = dir.join(name);
    fs::write(&path, contents).map_err(|e| CliError::io(&path, e))?;
    Ok(sha256_hex(contents.as_bytes()))
}

/// Runs the reproduction and writes all artifacts. Mismatches are reported
/// in the returned report, not as an error.
pub fn reproduce(opts: &ReproduceOptions, expected: &[ExpectedTable]) -> Result<ReproduceReport> {
    let start = Instant::now();
    fs::create_dir_all(&opts.out).map_err(|e| CliError::io(&opts.out, e))?;
    let cache = opts.cache.as_ref().map(RayCache::new).transpose()?;
    let mut source = RaySource::new(cache);

    let mut tables = Vec::new();
    for s in Scenario::ALL {
        tables.extend(scenario_tables(s, &TABLE_RHOS, &mut source)?);
    }
    info!("tables built in {:.3?}", start.elapsed());
    let mut sweeps = Vec::new();
    for s in Scenario::ALL {
        sweeps.push(sweep_table(
            &ScenarioConfig::scenario(s, None),
            opts.grid,
            &mut source,
        )?);
    }
    info!("sweeps built in {:.3?}", start.elapsed());

    let diffs = compare(&tables, expected);
    let ext = opts.format.extension();
    let mut files = Vec::new();
    for (kind, list) in [("table", &tables), ("sweep", &sweeps)] {
        for t in list {
            let file = format!("{}.{ext}", t.name);
            let sha256 = write_file(&opts.out, &file, &t.render(opts.format)?)?;
            files.push(ManifestEntry {
                file,
                kind,
                rows: t.rows.len(),
                sha256,
            });
        }
    }
    let manifest = Manifest {
        version: VERSION,
        d: crate::config::DEFAULT_D,
        alphas: crate::config::DEFAULT_ALPHAS.to_vec(),
        rho_grid: opts.grid,
        tables: tables.len(),
        sweeps: sweeps.len(),
        mismatches: diffs.len(),
        files,
    };
    let manifest_path = opts.out.join("manifest.json");
    let text = serde_json::to_string_pretty(&manifest)? + "\n";
    fs::write(&manifest_path, text).map_err(|e| CliError::io(&manifest_path, e))?;
    info!("reproduce finished in {:.3?}", start.elapsed());

    Ok(ReproduceReport {
        tables,
        sweeps,
        diffs,
        manifest,
        manifest_path,
    })
}
