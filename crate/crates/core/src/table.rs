// Copyright 2026 The pulseforge Authors
// SPDX-License-Identifier: Apache-2.0

//! Columnar sweep results and their CSV form.

use std::io::Write;

use crate::error::{Error, Result};

pub const VERSION: &str = concat!("pulseforge ", env!("CARGO_PKG_VERSION"));

/// Rectangular table whose first column is a strictly increasing grid
/// coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    name: String,
    columns: Vec<String>,
    rows: Vec<Vec<f64>>,
    metadata: Vec<(String, String)>,
}

impl SweepTable {
    pub fn new<S: Into<String>>(name: impl Into<String>, columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            name: name.into(),
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
            metadata: Vec::new(),
        }
    }

    pub fn with_meta(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.metadata.push((key.into(), value.to_string()));
        self
    }

    pub fn push_meta(&mut self, key: impl Into<String>, value: impl ToString) {
        self.metadata.push((key.into(), value.to_string()));
    }

    pub fn push_row(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidGrid(format!(
                "row has {} values, table '{}' has {} columns",
                row.len(),
                self.name,
                self.columns.len()
            )));
        }
        if let Some(bad) = row.iter().find(|v| !v.is_finite()) {
            return Err(Error::InvalidGrid(format!("non-finite value {bad} in table '{}'", self.name)));
        }
        if let Some(prev) = self.rows.last() {
            if !(row[0] > prev[0]) {
                return Err(Error::InvalidGrid(format!(
                    "grid coordinate {} does not increase after {} in table '{}'",
                    row[0], prev[0], self.name
                )));
            }
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn columns(&self) -> &[String] {
        &self.columns
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.rows
    }

    pub fn metadata(&self) -> &[(String, String)] {
        &self.metadata
    }

    pub fn meta(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.columns.iter().position(|c| c == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    /// Row index of the smallest value in `name` (first one on ties).
    pub fn argmin(&self, name: &str) -> Option<usize> {
        let col = self.column(name)?;
        col.iter()
            .enumerate()
            .min_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
    }

    /// Writes `#`-prefixed metadata (unless suppressed), a header line and
    /// one LF-terminated row per grid point, floats as `{:.16e}`.
    pub fn write_csv<W: Write>(&self, mut out: W, include_meta: bool) -> Result<()> {
        let io = |e: std::io::Error| Error::Serialization(e.to_string());
        if include_meta {
            writeln!(out, "# table: {}", self.name).map_err(io)?;
            for (k, v) in &self.metadata {
                writeln!(out, "# {k}: {v}").map_err(io)?;
            }
            writeln!(out, "# version: {VERSION}").map_err(io)?;
        }
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(out);
        let csv_err = |e: csv::Error| Error::Serialization(e.to_string());
        writer.write_record(&self.columns).map_err(csv_err)?;
        for row in &self.rows {
            writer
                .write_record(row.iter().map(|v| format!("{v:.16e}")))
                .map_err(csv_err)?;
        }
        writer.flush().map_err(io)?;
        Ok(())
    }

    pub fn to_csv(&self, include_meta: bool) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, include_meta)
            .expect("writing to memory cannot fail");
        String::from_utf8(buf).expect("csv output is ascii")
    }
}
