//! Output tables and their CSV / JSON rendering.

use serde_json::{json, Value};

use crate::config::OutputFormat;
use crate::error::Result;

/// Display precision of moment cells.
pub const MOMENT_DECIMALS: usize = 3;
/// Display precision of ES cells.
pub const ES_DECIMALS: usize = 1;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(usize),
    /// A real printed in its shortest round-trip form (levels, grid points).
    Plain(f64),
    Real {
        value: f64,
        decimals: usize,
    },
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    pub fn real(value: f64, decimals: usize) -> Self {
        Cell::Real { value, decimals }
    }

    /// Display text, rounded for reals. Negative zero prints as zero.
    pub fn render(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Plain(x) => x.to_string(),
            Cell::Real { value, decimals } => round_text(*value, *decimals),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Cell::Int(n) => json!(n),
            Cell::Plain(x) => json!(x),
            Cell::Real { .. } => {
                let v: f64 = self.render().parse().expect("rendered real parses");
                json!(v)
            }
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

pub fn round_text(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    /// File stem, e.g. `var_BBB`.
    pub name: String,
    pub title: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: impl Into<String>, title: impl Into<String>, columns: &[&str]) -> Self {
        Self {
            name: name.into(),
            title: title.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::render))?;
        }
        let bytes = w
            .into_inner()
            .map_err(|e| csv::Error::from(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "table": self.name,
            "title": self.title,
            "columns": self.columns,
            "rows": self
                .rows
                .iter()
                .map(|r| Value::Array(r.iter().map(Cell::to_json).collect()))
                .collect::<Vec<_>>(),
        })
    }

    pub fn render(&self, format: OutputFormat) -> Result<String> {
        match format {
            OutputFormat::Csv => self.to_csv(),
            OutputFormat::Json => Ok(serde_json::to_string_pretty(&self.to_json())? + "\n"),
        }
    }
}
