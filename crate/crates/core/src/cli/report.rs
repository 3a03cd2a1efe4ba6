//! Report files: schema-versioned JSON plus plain CSV dumps.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::config::RunConfig;
use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;
use crate::scalar::Scalar;
use crate::spectral::Verdict;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub schema_version: u32,
    pub suite: String,
    pub tag: String,
    pub inputs: RunConfig,
    pub verdict: Verdict,
    /// Wall-clock time; the only field that varies between identical runs.
    pub elapsed_seconds: f64,
    pub artifacts: Vec<String>,
    pub result: serde_json::Value,
}

/// A report together with the CSV files it refers to.
#[derive(Debug, Clone)]
pub struct SuiteRun {
    pub report: SuiteReport,
    pub files: Vec<(String, String)>,
}

impl SuiteRun {
    pub fn passed(&self) -> bool {
        self.report.verdict.passed()
    }

    /// Write `<suite>.report.json` and the CSV files under `dir`.
    pub fn write(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        std::fs::create_dir_all(dir)
            .map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
        let mut written = Vec::new();
        for (name, body) in &self.files {
            let path = dir.join(name);
            std::fs::write(&path, body)?;
            written.push(path);
        }
        let path = dir.join(format!("{}.report.json", self.report.suite));
        let mut json = serde_json::to_string_pretty(&self.report).map_err(|e| Error::Io(e.to_string()))?;
        json.push('\n');
        std::fs::write(&path, json)?;
        written.push(path);
        Ok(written)
    }
}

pub fn eigenvalues_csv(values: &[(f64, f64)]) -> String {
    let mut out = String::from("index,re,im\n");
    for (i, (re, im)) in values.iter().enumerate() {
        let _ = writeln!(out, "{i},{re},{im}");
    }
    out
}

/// `row,col,value` with indices shifted by `offset` (for windows of ℤ).
pub fn matrix_csv<S: Scalar>(m: &DenseMatrix<S>, offset: i64) -> String {
    let mut out = String::from("row,col,value\n");
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            let _ = writeln!(out, "{},{},{}", i as i64 + offset, j as i64 + offset, m[(i, j)]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{ratio, Rational};

    #[test]
    fn csv_layouts() {
        assert_eq!(eigenvalues_csv(&[(0.5, 0.0), (-1.0, 2.0)]), "index,re,im\n0,0.5,0\n1,-1,2\n");
        let m = DenseMatrix::<Rational>::diagonal(&[ratio(1, 2), ratio(3, 1)]);
        assert_eq!(matrix_csv(&m, -1), "row,col,value\n-1,-1,1/2\n-1,0,0\n0,-1,0\n0,0,3\n");
    }
}
