//! Tabular results and their CSV / JSON / text renderings.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};

/// Bumped whenever a CSV header or JSON key changes.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    /// A moment that diverges.
    Inf,
    Int(u64),
    Bool(bool),
    Str(String),
    Empty,
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl Cell {
    fn text(&self, style: NumStyle) -> String {
        match self {
            Cell::Num(x) => match style {
                NumStyle::Fixed(d) => format!("{x:.d$}"),
                NumStyle::Sci(d) => format!("{x:.d$e}"),
                NumStyle::Exact if *x != 0.0 && (x.abs() < 1e-4 || x.abs() >= 1e16) => format!("{x:e}"),
                NumStyle::Exact => format!("{x}"),
            },
            Cell::Inf => "inf".into(),
            Cell::Int(n) => n.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Str(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) | Cell::Inf => json!("inf"),
            Cell::Int(n) => json!(n),
            Cell::Bool(b) => json!(b),
            Cell::Str(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }
}

/// How numbers are printed in CSV and text; JSON always carries the exact
/// double.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumStyle {
    /// Shortest representation that round-trips.
    Exact,
    Fixed(usize),
    Sci(usize),
}

#[derive(Debug, Clone)]
pub struct Column {
    pub name: &'static str,
    pub style: NumStyle,
}

pub fn col(name: &'static str) -> Column {
    Column {
        name,
        style: NumStyle::Exact,
    }
}

/// Six decimals, as in the published tables.
pub fn col6(name: &'static str) -> Column {
    Column {
        name,
        style: NumStyle::Fixed(6),
    }
}

pub fn col_diff(name: &'static str) -> Column {
    Column {
        name,
        style: NumStyle::Sci(2),
    }
}

/// The output of one command.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub config: Map<String, Value>,
    pub columns: Vec<Column>,
    pub rows: Vec<Vec<Cell>>,
    pub residuals: Map<String, Value>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, columns: Vec<Column>) -> Self {
        Self {
            command,
            config: Map::new(),
            columns,
            rows: Vec::new(),
            residuals: Map::new(),
            notes: Vec::new(),
        }
    }

    pub fn config(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.config.insert(key.into(), value.into());
        self
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn residual(&mut self, key: &str, value: impl Into<Value>) {
        self.residuals.insert(key.into(), value.into());
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.json()).expect("serializable");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn header_lines(&self) -> Vec<String> {
        let mut lines = vec![
            format!("potts3pt {} schema_version={SCHEMA_VERSION}", env!("CARGO_PKG_VERSION")),
            format!("command={}", self.command),
        ];
        lines.extend(self.config.iter().map(|(k, v)| format!("{k}={}", plain(v))));
        lines
    }

    fn csv(&self) -> String {
        let mut out = String::new();
        for line in self.header_lines() {
            writeln!(out, "# {line}").unwrap();
        }
        for (k, v) in &self.residuals {
            writeln!(out, "# residual {k}={}", plain(v)).unwrap();
        }
        for note in &self.notes {
            writeln!(out, "# note: {note}").unwrap();
        }
        let names: Vec<&str> = self.columns.iter().map(|c| c.name).collect();
        writeln!(out, "{}", names.join(",")).unwrap();
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .zip(&self.columns)
                .map(|(c, col)| csv_escape(&c.text(col.style)))
                .collect();
            writeln!(out, "{}", cells.join(",")).unwrap();
        }
        out
    }

    pub fn json(&self) -> Value {
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.name.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": self.command,
            "config": self.config,
            "results": results,
            "residuals": self.residuals,
            "notes": self.notes,
        })
    }

    fn text(&self) -> String {
        let mut out = String::new();
        for line in self.header_lines() {
            writeln!(out, "# {line}").unwrap();
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|row| row.iter().zip(&self.columns).map(|(c, col)| c.text(col.style)).collect())
            .collect();
        let widths: Vec<usize> = self
            .columns
            .iter()
            .enumerate()
            .map(|(i, c)| cells.iter().map(|r| r[i].len()).fold(c.name.len(), usize::max))
            .collect();
        let line = |items: Vec<&str>| {
            items
                .iter()
                .zip(&widths)
                .map(|(s, w)| format!("{s:>w$}"))
                .collect::<Vec<_>>()
                .join("  ")
        };
        writeln!(out, "{}", line(self.columns.iter().map(|c| c.name).collect())).unwrap();
        for row in &cells {
            writeln!(out, "{}", line(row.iter().map(String::as_str).collect())).unwrap();
        }
        for (k, v) in &self.residuals {
            writeln!(out, "{k}: {}", plain(v)).unwrap();
        }
        for note in &self.notes {
            writeln!(out, "note: {note}").unwrap();
        }
        out
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}
