//! CSV result tables with a leading '#'-prefixed JSON metadata line.
//!
//! Numbers serialize with 17 significant digits so identical configs give
//! byte-identical rows; timings live in the metadata line only.

use std::fmt::Write as _;

use crate::error::Result;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Float(f64),
    Int(i64),
    Text(String),
}

impl Cell {
    fn render(&self) -> String {
        match self {
            // 17 significant digits; ±inf rendered as bare words
            Cell::Float(x) => {
                if x.is_infinite() {
                    if *x < 0.0 {
                        "-inf".to_string()
                    } else {
                        "inf".to_string()
                    }
                } else {
                    format!("{x:.16e}")
                }
            }
            Cell::Int(v) => v.to_string(),
            Cell::Text(s) => s.clone(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Float(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

/// Rectangular results plus a metadata block (config echo, version, timing).
#[derive(Debug, Clone)]
pub struct ResultTable {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub metadata: serde_json::Value,
}

impl ResultTable {
    pub fn new(columns: &[&str], metadata: serde_json::Value) -> Self {
        ResultTable {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
            metadata,
        }
    }

    pub fn push_row(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width mismatch");
        self.rows.push(row);
    }

    /// Render to the CSV format: `# {metadata-json}`, header, rows.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# {}", self.metadata);
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Rows only (no metadata), for determinism comparisons.
    pub fn render_rows(&self) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::render).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }

    /// Write the fully rendered table; the content is built in memory first
    /// so a failed computation never leaves a partial file.
    pub fn write_to(&self, path: &std::path::Path) -> Result<()> {
        std::fs::write(path, self.render())?;
        Ok(())
    }
}
