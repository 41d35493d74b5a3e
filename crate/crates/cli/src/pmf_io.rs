//! Reading count pmfs from files.
//!
//! Three layouts are accepted:
//!
//! * JSON: `{"d": 4, "probs": [..]}` or `{"d": 4, "sparse": [[j, prob], ..]}`;
//! * dense CSV with header `j,prob` and one row per `j = 0..=d` in order;
//! * sparse text: a first line `d=N`, then `j:prob` atoms separated by
//!   newlines or `;`.

use std::fs;
use std::path::Path;

use exrays_core::CountPmf;
use serde::Deserialize;

use crate::error::{CliError, Result};

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonPmf {
    d: usize,
    probs: Option<Vec<f64>>,
    sparse: Option<Vec<(usize, f64)>>,
}

fn bad(detail: impl Into<String>) -> CliError {
    CliError::Format {
        what: "pmf",
        detail: detail.into(),
    }
}

pub fn parse_json(text: &str) -> Result<CountPmf> {
    let j: JsonPmf = serde_json::from_str(text)?;
    match (j.probs, j.sparse) {
        (Some(p), None) => Ok(CountPmf::new(j.d, p)?),
        (None, Some(s)) => Ok(CountPmf::from_sparse(j.d, &s)?),
        _ => Err(bad("expected exactly one of \"probs\" or \"sparse\"")),
    }
}

pub fn parse_dense_csv(text: &str) -> Result<CountPmf> {
    let mut r = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = r.headers()?.clone();
    if header.len() != 2 || &header[0] != "j" || &header[1] != "prob" {
        return Err(bad("dense CSV needs the header j,prob"));
    }
    let mut probs = Vec::new();
    for (n, rec) in r.deserialize::<(usize, f64)>().enumerate() {
        let (j, p) = rec?;
        if j != n {
            return Err(bad(format!(
                "row {n} has j = {j}; rows must list j = 0, 1, 2, ..."
            )));
        }
        probs.push(p);
    }
    if probs.is_empty() {
        return Err(bad("no rows"));
    }
    Ok(CountPmf::new(probs.len() - 1, probs)?)
}

pub fn parse_sparse(text: &str) -> Result<CountPmf> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let first = lines.next().ok_or_else(|| bad("empty file"))?;
    let d: usize = first
        .strip_prefix("d=")
        .and_then(|v| v.trim().parse().ok())
        .ok_or_else(|| bad("sparse pmf must start with d=N"))?;
    let mut atoms = Vec::new();
    for atom in lines
        .flat_map(|l| l.split(';'))
        .map(str::trim)
        .filter(|a| !a.is_empty())
    {
        let (j, p) = atom
            .split_once(':')
            .ok_or_else(|| bad(format!("atom {atom:?}")))?;
        let j: usize = j.trim().parse().map_err(|_| bad(format!("index {j:?}")))?;
        let p: f64 = p.trim().parse().map_err(|_| bad(format!("mass {p:?}")))?;
        atoms.push((j, p));
    }
    atoms.sort_by_key(|a| a.0);
    Ok(CountPmf::from_sparse(d, &atoms)?)
}

/// Reads a pmf, picking the layout from the extension (`.json`) or the
/// first line (`j,prob` header or `d=N`).
pub fn read_pmf(path: &Path) -> Result<CountPmf> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    if path.extension().is_some_and(|e| e == "json") {
        return parse_json(&text);
    }
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with("d=") {
        parse_sparse(&text)
    } else {
        parse_dense_csv(&text)
    }
}
