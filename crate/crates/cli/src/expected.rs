//! Reference values of the published tables and the cell-level comparison
//! used by `reproduce`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tables::{round_text, Cell, Table};

/// Expected numeric content of one table, row by row, in column order.
/// The moment tables' first column (`order`) is not compared.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExpectedTable {
    pub name: String,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellDiff {
    pub table: String,
    pub row: usize,
    pub column: String,
    pub expected: String,
    pub found: String,
}

impl fmt::Display for CellDiff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} row {} column {}: expected {:?}, found {:?}",
            self.table, self.row, self.column, self.expected, self.found
        )
    }
}

fn t(name: &str, rows: &[&[f64]]) -> ExpectedTable {
    ExpectedTable {
        name: name.to_string(),
        rows: rows.iter().map(|r| r.to_vec()).collect(),
    }
}

/// The eighteen published tables at `d = 100`, `alpha = 0.9, 0.95, 0.99`.
pub fn published() -> Vec<ExpectedTable> {
    vec![
        t(
            "moments_A",
            &[
                &[0.003, 0.003],
                &[0.0, 0.003],
                &[0.0, 0.003],
                &[0.0, 0.003],
                &[-0.003, 1.0],
            ],
        ),
        t(
            "var_A",
            &[&[0.9, 0.0, 2.0], &[0.95, 0.0, 5.0], &[0.99, 0.0, 29.0]],
        ),
        t(
            "es_A",
            &[&[0.9, 0.3, 2.0], &[0.95, 0.3, 5.0], &[0.99, 0.3, 29.0]],
        ),
        t(
            "corr_var_A_1-6",
            &[
                &[0.9, 0.0, 2.0, 0.0],
                &[0.95, 0.0, 5.0, 0.0],
                &[0.99, 1.0, 22.0, 9.0],
            ],
        ),
        t(
            "corr_var_A_1-2",
            &[
                &[0.9, 0.0, 1.0, 0.0],
                &[0.95, 0.0, 3.0, 0.0],
                &[0.99, 0.0, 21.0, 4.0],
            ],
        ),
        t(
            "corr_var_A_5-6",
            &[
                &[0.9, 0.0, 0.0, 0.0],
                &[0.95, 0.0, 1.0, 0.0],
                &[0.99, 0.0, 7.0, 0.0],
            ],
        ),
        t(
            "moments_BBB",
            &[
                &[0.017, 0.017],
                &[0.0, 0.017],
                &[0.0, 0.017],
                &[0.0, 0.017],
                &[-0.009, 1.0],
            ],
        ),
        t(
            "var_BBB",
            &[&[0.9, 0.0, 16.0], &[0.95, 0.0, 33.0], &[0.99, 1.0, 100.0]],
        ),
        t(
            "es_BBB",
            &[&[0.9, 1.7, 16.0], &[0.95, 1.7, 33.0], &[0.99, 1.7, 100.0]],
        ),
        t(
            "corr_var_BBB_1-6",
            &[
                &[0.9, 0.0, 16.0, 5.0],
                &[0.95, 1.0, 25.0, 11.0],
                &[0.99, 2.0, 55.0, 29.0],
            ],
        ),
        t(
            "corr_var_BBB_1-2",
            &[
                &[0.9, 0.0, 9.0, 0.0],
                &[0.95, 0.0, 25.0, 5.0],
                &[0.99, 1.0, 93.0, 57.0],
            ],
        ),
        t(
            "corr_var_BBB_5-6",
            &[
                &[0.9, 0.0, 3.0, 0.0],
                &[0.95, 0.0, 8.0, 0.0],
                &[0.99, 61.0, 100.0, 94.0],
            ],
        ),
        t(
            "moments_B",
            &[
                &[0.266, 0.266],
                &[0.069, 0.266],
                &[0.017, 0.266],
                &[0.004, 0.266],
                &[-0.01, 1.0],
            ],
        ),
        t(
            "var_B",
            &[
                &[0.9, 19.0, 100.0],
                &[0.95, 23.0, 100.0],
                &[0.99, 26.0, 100.0],
            ],
        ),
        t(
            "es_B",
            &[
                &[0.9, 26.6, 100.0],
                &[0.95, 26.6, 100.0],
                &[0.99, 26.6, 100.0],
            ],
        ),
        t(
            "corr_var_B_1-6",
            &[
                &[0.9, 21.0, 82.0, 53.0],
                &[0.95, 26.0, 100.0, 62.0],
                &[0.99, 38.0, 100.0, 76.0],
            ],
        ),
        t(
            "corr_var_B_1-2",
            &[
                &[0.9, 42.0, 100.0, 82.0],
                &[0.95, 56.0, 100.0, 93.0],
                &[0.99, 63.0, 100.0, 100.0],
            ],
        ),
        t(
            "corr_var_B_5-6",
            &[
                &[0.9, 81.0, 100.0, 100.0],
                &[0.95, 86.0, 100.0, 100.0],
                &[0.99, 88.0, 100.0, 100.0],
            ],
        ),
    ]
}

/// Renders `x` the way `cell` is displayed, so the comparison happens at
/// display precision.
fn render_like(cell: &Cell, x: f64) -> String {
    match cell {
        Cell::Real { decimals, .. } => round_text(x, *decimals),
        Cell::Int(_) if x >= 0.0 && x.fract() == 0.0 => (x as usize).to_string(),
        _ => x.to_string(),
    }
}

/// Cell-level differences between generated `tables` and `expected`.
pub fn compare(tables: &[Table], expected: &[ExpectedTable]) -> Vec<CellDiff> {
    let mut diffs = Vec::new();
    for exp in expected {
        let Some(table) = tables.iter().find(|t| t.name == exp.name) else {
            diffs.push(CellDiff {
                table: exp.name.clone(),
                row: 0,
                column: "*".into(),
                expected: "table".into(),
                found: "missing".into(),
            });
            continue;
        };
        if table.rows.len() != exp.rows.len() {
            diffs.push(CellDiff {
                table: exp.name.clone(),
                row: 0,
                column: "*".into(),
                expected: format!("{} rows", exp.rows.len()),
                found: format!("{} rows", table.rows.len()),
            });
            continue;
        }
        // moment tables label their rows with text; compare numeric columns only
        let offset = usize::from(matches!(
            table.rows.first().and_then(|r| r.first()),
            Some(Cell::Text(_))
        ));
        for (r, (row, want)) in table.rows.iter().zip(&exp.rows).enumerate() {
            let cells = &row[offset..];
            if cells.len() < want.len() {
                diffs.push(CellDiff {
                    table: exp.name.clone(),
                    row: r,
                    column: "*".into(),
                    expected: format!("{} columns", want.len()),
                    found: format!("{} columns", cells.len()),
                });
                continue;
            }
            for (c, (cell, &x)) in cells.iter().zip(want).enumerate() {
                let expected = render_like(cell, x);
                let found = cell.render();
                if expected != found {
                    diffs.push(CellDiff {
                        table: exp.name.clone(),
                        row: r,
                        column: table.columns[c + offset].clone(),
                        expected,
                        found,
                    });
                }
            }
        }
    }
    diffs
}
