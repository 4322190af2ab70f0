//! CSV result tables with a `#`-prefixed metadata header.
//!
//! Values are written with 17 significant digits, which round-trips every
//! `f64` exactly. The format carries no timestamps, so identical runs give
//! identical files.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use crate::error::CliError;

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ResultTable {
    pub metadata: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            metadata: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.metadata.push((key.to_owned(), value.to_string()));
    }

    pub fn meta_value(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    /// Appends a row; panics if its width differs from the header.
    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(
            row.len(),
            self.columns.len(),
            "row width must match the header"
        );
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let index = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[index]).collect())
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for (k, v) in &self.metadata {
            let _ = writeln!(out, "# {k} = {v}");
        }
        let _ = writeln!(out, "{}", self.columns.join(","));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|x| format_number(*x)).collect();
            let _ = writeln!(out, "{}", cells.join(","));
        }
        out
    }
}

pub fn format_number(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes the table, creating parent directories as needed.
pub fn write_table(table: &ResultTable, path: &Path) -> Result<(), CliError> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent).map_err(|source| CliError::Io {
            path: parent.to_path_buf(),
            source,
        })?;
    }
    fs::write(path, table.to_csv()).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses text produced by [`ResultTable::to_csv`].
pub fn parse_table(text: &str) -> Result<ResultTable, String> {
    let mut table = ResultTable::default();
    let mut header_seen = false;
    for (index, line) in text.lines().enumerate() {
        if let Some(meta) = line.strip_prefix("# ") {
            if header_seen {
                return Err(format!("line {}: metadata after the header row", index + 1));
            }
            let (k, v) = meta
                .split_once(" = ")
                .ok_or_else(|| format!("line {}: malformed metadata", index + 1))?;
            table.metadata.push((k.to_owned(), v.to_owned()));
        } else if !header_seen {
            table.columns = line.split(',').map(str::to_owned).collect();
            header_seen = true;
        } else {
            let row = line
                .split(',')
                .map(|c| {
                    c.parse::<f64>()
                        .map_err(|e| format!("line {}: {e}", index + 1))
                })
                .collect::<Result<Vec<_>, _>>()?;
            if row.len() != table.columns.len() {
                return Err(format!(
                    "line {}: expected {} cells",
                    index + 1,
                    table.columns.len()
                ));
            }
            table.rows.push(row);
        }
    }
    if !header_seen {
        return Err("missing header row".into());
    }
    Ok(table)
}

pub fn read_table(path: &Path) -> Result<ResultTable, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_table(&text).map_err(|msg| CliError::Format {
        path: path.to_path_buf(),
        message: msg,
    })
}
