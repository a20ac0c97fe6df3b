//! Tabular output with a metadata header, as CSV or JSON.

use std::io::Write;
use std::path::Path;

use serde_json::{json, Map, Value};

use crate::config::Format;
use crate::error::{CliError, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            // 17 significant digits
            Cell::Num(x) => format!("{x:.16e}"),
            Cell::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(_) => Value::Null,
            Cell::Text(s) => json!(s),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Cell::Num(x) => Some(*x),
            Cell::Text(_) => None,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Structured payload emitted alongside the table in JSON output.
    pub extra: Option<Value>,
}

impl Dataset {
    pub fn new(metadata: Vec<(String, String)>, columns: &[&str]) -> Self {
        Self {
            metadata,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            extra: None,
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        self.rows.iter().map(|r| r[idx].as_f64()).collect()
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => self.to_json(),
        }
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::new();
        for (k, v) in &self.metadata {
            s.push_str(&format!("# {k}={}\n", v.replace('\n', " ")));
        }
        s.push_str(&self.columns.join(","));
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Cell::csv).collect();
            s.push_str(&cells.join(","));
            s.push('\n');
        }
        s
    }

    pub fn to_json(&self) -> String {
        let mut meta = Map::new();
        for (k, v) in &self.metadata {
            meta.insert(k.clone(), json!(v));
        }
        let mut obj = Map::new();
        obj.insert("metadata".into(), Value::Object(meta));
        obj.insert("columns".into(), json!(self.columns));
        obj.insert(
            "rows".into(),
            Value::Array(
                self.rows
                    .iter()
                    .map(|r| Value::Array(r.iter().map(Cell::json).collect()))
                    .collect(),
            ),
        );
        if let Some(Value::Object(extra)) = &self.extra {
            for (k, v) in extra {
                obj.insert(k.clone(), v.clone());
            }
        }
        let mut text = serde_json::to_string_pretty(&Value::Object(obj)).expect("serializable");
        text.push('\n');
        text
    }

    /// Parses CSV produced by [`Dataset::to_csv`]. Cells that are not numbers
    /// come back as text.
    pub fn parse_csv(text: &str) -> Result<Dataset> {
        let mut metadata = Vec::new();
        let mut lines = text.lines();
        let header = loop {
            let line = lines
                .next()
                .ok_or_else(|| CliError::invalid("dataset has no header row"))?;
            match line.strip_prefix("# ") {
                Some(kv) => {
                    let (k, v) = kv
                        .split_once('=')
                        .ok_or_else(|| CliError::invalid(format!("bad metadata line `{line}`")))?;
                    metadata.push((k.to_string(), v.to_string()));
                }
                None => break line,
            }
        };
        let columns: Vec<String> = header.split(',').map(str::to_string).collect();
        let rows = lines
            .filter(|l| !l.is_empty())
            .map(|l| {
                l.split(',')
                    .map(|c| c.parse::<f64>().map(Cell::Num).unwrap_or_else(|_| Cell::Text(c.to_string())))
                    .collect()
            })
            .collect();
        Ok(Dataset {
            metadata,
            columns,
            rows,
            extra: None,
        })
    }

    pub fn write_to(&self, path: &Path, format: Format) -> Result<()> {
        let io = |e: std::io::Error| CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        };
        let mut f = std::fs::File::create(path).map_err(io)?;
        f.write_all(self.render(format).as_bytes()).map_err(io)?;
        f.flush().map_err(io)
    }
}
