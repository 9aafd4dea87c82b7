//! Disk-system file formats.
//!
//! CSV: one disk per line, `c_1,...,c_d,r`; the dimension comes from the
//! first row. Blank lines and lines starting with `#` are ignored.
//!
//! JSON: `{"dimension": d, "disks": [[c_1, ..., c_d, r], ...]}`.

use std::fmt;

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::geometry::{Disk, DiskSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    /// 1-based line (CSV and JSON syntax errors) or row (JSON rows).
    pub line: Option<usize>,
    pub message: String,
}

impl ParseError {
    fn at(line: usize, message: impl Into<String>) -> Self {
        Self { line: Some(line), message: message.into() }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiskSystemFile {
    pub dimension: usize,
    /// Rows of `dimension` center coordinates followed by the radius.
    pub disks: Vec<Vec<f64>>,
}

impl DiskSystemFile {
    pub fn from_system(system: &DiskSystem) -> Self {
        let disks = system
            .iter()
            .map(|d| d.center().iter().cloned().chain(std::iter::once(d.radius())).collect())
            .collect();
        Self { dimension: system.dim(), disks }
    }

    /// Validates rows; `lines[k]` is the source line of row `k` for messages.
    fn into_system_with_lines(self, lines: &[usize]) -> Result<DiskSystem, ParseError> {
        if self.dimension == 0 {
            return Err(ParseError { line: None, message: "dimension must be at least 1".into() });
        }
        if self.disks.is_empty() {
            return Err(ParseError { line: None, message: "no disks given".into() });
        }
        let mut disks = Vec::with_capacity(self.disks.len());
        for (k, row) in self.disks.into_iter().enumerate() {
            let line = lines.get(k).copied().unwrap_or(k + 1);
            if row.len() != self.dimension + 1 {
                return Err(ParseError::at(
                    line,
                    format!("expected {} values, found {}", self.dimension + 1, row.len()),
                ));
            }
            let radius = row[self.dimension];
            if !(radius > 0.0) {
                return Err(ParseError::at(line, format!("non-positive radius {radius}")));
            }
            let center = row[..self.dimension].to_vec();
            let disk = Disk::new(center, radius).map_err(|e| ParseError::at(line, e.to_string()))?;
            disks.push(disk);
        }
        DiskSystem::new(disks).map_err(|e| ParseError { line: None, message: e.to_string() })
    }

    pub fn into_system(self) -> Result<DiskSystem, ParseError> {
        self.into_system_with_lines(&[])
    }

    /// Shortest round-trip representation of every value.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.disks {
            let cells: Vec<String> = row.iter().map(|v| format!("{v:?}")).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }
}

pub fn parse_disk_system(text: &str, format: InputFormat) -> Result<DiskSystem, ParseError> {
    match format {
        InputFormat::Csv => parse_csv(text),
        InputFormat::Json => {
            let file: DiskSystemFile = serde_json::from_str(text)
                .map_err(|e| ParseError { line: Some(e.line()), message: e.to_string() })?;
            file.into_system()
        }
    }
}

fn parse_csv(text: &str) -> Result<DiskSystem, ParseError> {
    let mut rows = Vec::new();
    let mut lines = Vec::new();
    let mut dimension = None;
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split(',')
            .map(|cell| {
                let cell = cell.trim();
                cell.parse::<f64>()
                    .ok()
                    .filter(|v| v.is_finite())
                    .ok_or_else(|| ParseError::at(line_no, format!("malformed number {cell:?}")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        if row.len() < 2 {
            return Err(ParseError::at(line_no, "a disk needs at least one coordinate and a radius"));
        }
        let d = *dimension.get_or_insert(row.len() - 1);
        if row.len() != d + 1 {
            return Err(ParseError::at(
                line_no,
                format!("ragged row: expected {} values, found {}", d + 1, row.len()),
            ));
        }
        rows.push(row);
        lines.push(line_no);
    }
    let dimension = dimension.ok_or(ParseError { line: None, message: "no disks given".into() })?;
    DiskSystemFile { dimension, disks: rows }.into_system_with_lines(&lines)
}
