//! Tabular results and their CSV / JSON serializations.
//!
//! Floats are written with Rust's shortest round-trip formatting, so every
//! printed value parses back to the exact `f64` that was computed. Run
//! metadata lives only in `#` comment lines; no timestamps are emitted.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(v) => format_float(*v),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(v) => serde_json::Number::from_f64(*v)
                .map(Value::Number)
                .unwrap_or(Value::Null),
            Cell::Text(s) => Value::String(s.clone()),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(v) => Some(*v),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

pub fn format_float(v: f64) -> String {
    format!("{v:?}")
}

#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub name: String,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(name: &str, columns: &[&str]) -> Self {
        Self {
            name: name.to_string(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| &r[idx]).collect())
    }

    fn write_csv(&self, out: &mut String) {
        out.push_str(&self.columns.join(","));
        out.push('\n');
        for row in &self.rows {
            let line: Vec<String> = row.iter().map(Cell::csv).collect();
            out.push_str(&line.join(","));
            out.push('\n');
        }
    }
}

/// Everything one subcommand produces.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub mode: String,
    pub config: Vec<(String, String)>,
    pub tables: Vec<Table>,
}

impl Report {
    pub fn table(&self, name: &str) -> Option<&Table> {
        self.tables.iter().find(|t| t.name == name)
    }

    fn header(&self) -> String {
        let mut h = String::new();
        let _ = writeln!(h, "# atomscatter {} {}", env!("CARGO_PKG_VERSION"), self.mode);
        for (k, v) in &self.config {
            let _ = writeln!(h, "# {k} = {v}");
        }
        h
    }

    pub fn table_csv(&self, table: &Table) -> String {
        let mut s = self.header();
        if self.tables.len() > 1 {
            let _ = writeln!(s, "# table = {}", table.name);
        }
        table.write_csv(&mut s);
        s
    }

    /// All tables in one stream, separated by blank lines.
    pub fn to_csv(&self) -> String {
        self.tables
            .iter()
            .map(|t| self.table_csv(t))
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn to_json(&self) -> String {
        let config: Map<String, Value> = self
            .config
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        let tables: Map<String, Value> = self
            .tables
            .iter()
            .map(|t| {
                let rows: Vec<Value> = t
                    .rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect();
                (t.name.clone(), json!({ "columns": t.columns, "rows": rows }))
            })
            .collect();
        let doc = json!({
            "program": "atomscatter",
            "version": env!("CARGO_PKG_VERSION"),
            "mode": self.mode,
            "config": config,
            "tables": tables,
        });
        let mut s = serde_json::to_string_pretty(&doc).expect("serializable");
        s.push('\n');
        s
    }

    /// CSV: one file per table. A single-table report goes to `path`; with
    /// several tables, `run.csv` becomes `run.<table>.csv`.
    pub fn write_csv_files(&self, path: &Path) -> std::io::Result<Vec<PathBuf>> {
        let mut written = Vec::new();
        for t in &self.tables {
            let target = if self.tables.len() == 1 {
                path.to_path_buf()
            } else {
                table_path(path, &t.name)
            };
            fs::write(&target, self.table_csv(t))?;
            written.push(target);
        }
        Ok(written)
    }
}

pub fn table_path(base: &Path, table: &str) -> PathBuf {
    let stem = base.file_stem().and_then(|s| s.to_str()).unwrap_or("out");
    let ext = base.extension().and_then(|s| s.to_str()).unwrap_or("csv");
    base.with_file_name(format!("{stem}.{table}.{ext}"))
}
