//! The repo-wide JSON matrix format:
//! `{"rows": n, "cols": m, "data": [[re, im], ...]}`, row-major.
//!
//! Maps add a `"kind"` field (`"linear"`, `"antilinear"` or `"conjugation"`).

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::antilinear::{AntiLinearMap, Conjugation};
use crate::error::{Error, Result};
use crate::matrix::{c, CMatrix};
use crate::tolerance::Tolerance;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MapKind {
    Linear,
    Antilinear,
    Conjugation,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kind: Option<MapKind>,
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<[f64; 2]>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let mut data = Vec::with_capacity(m.len());
        for i in 0..m.nrows() {
            for j in 0..m.ncols() {
                let z = m[(i, j)];
                data.push([z.re, z.im]);
            }
        }
        Self { name: None, kind: None, rows: m.nrows(), cols: m.ncols(), data }
    }

    pub fn with_kind(mut self, kind: MapKind) -> Self {
        self.kind = Some(kind);
        self
    }

    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        if self.rows == 0 || self.cols == 0 {
            return Err(Error::Domain("matrix dimensions must be positive".into()));
        }
        if self.data.len() != self.rows * self.cols {
            return Err(Error::Domain(format!(
                "expected {} entries for a {}x{} matrix, found {}",
                self.rows * self.cols,
                self.rows,
                self.cols,
                self.data.len()
            )));
        }
        if self.data.iter().flatten().any(|x| !x.is_finite()) {
            return Err(Error::Domain("matrix has non-finite entries".into()));
        }
        Ok(CMatrix::from_row_iterator(self.rows, self.cols, self.data.iter().map(|p| c(p[0], p[1]))))
    }
}

pub fn matrix_to_json(m: &CMatrix) -> serde_json::Value {
    serde_json::to_value(MatrixJson::from_matrix(m)).expect("matrix serializes")
}

pub fn parse_matrix(text: &str) -> Result<MatrixJson> {
    serde_json::from_str(text).map_err(|e| Error::Domain(format!("malformed matrix JSON: {e}")))
}

pub fn read_matrix_file(path: &Path) -> Result<MatrixJson> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Domain(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

/// Interpret a parsed file as an anti-linear map. Files without a kind, or
/// tagged `antilinear`/`conjugation`, are accepted; `linear` is rejected.
pub fn to_antilinear(m: &MatrixJson) -> Result<AntiLinearMap> {
    if m.kind == Some(MapKind::Linear) {
        return Err(Error::Domain("expected an anti-linear map, file is tagged linear".into()));
    }
    AntiLinearMap::new(m.to_matrix()?)
}

pub fn to_conjugation(m: &MatrixJson, tol: &Tolerance) -> Result<Conjugation> {
    if m.kind == Some(MapKind::Linear) {
        return Err(Error::InvalidConjugation("file is tagged linear".into()));
    }
    Conjugation::new(m.to_matrix()?, tol)
}

/// Result bundle of a decomposition: named factors, residual magnitudes and
/// an overall verdict.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Bundle {
    pub factors: Vec<MatrixJson>,
    pub residuals: BTreeMap<String, f64>,
    pub passed: bool,
}

impl Bundle {
    pub fn new<'a>(
        factors: Vec<MatrixJson>,
        residuals: impl IntoIterator<Item = (&'a str, f64)>,
        passed: bool,
    ) -> Self {
        let residuals = residuals.into_iter().map(|(k, v)| (k.to_string(), v)).collect();
        Self { factors, residuals, passed }
    }

    pub fn factor(&self, name: &str) -> Option<&MatrixJson> {
        self.factors.iter().find(|f| f.name.as_deref() == Some(name))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::from_rows;

    #[test]
    fn row_major_layout() {
        let m = from_rows(1, 2, &[c(1.0, 2.0), c(3.0, -4.0)]);
        let v = matrix_to_json(&m);
        assert_eq!(v, serde_json::json!({"rows": 1, "cols": 2, "data": [[1.0, 2.0], [3.0, -4.0]]}));
    }

    #[test]
    fn rejects_bad_shapes() {
        let j = parse_matrix(r#"{"rows": 2, "cols": 2, "data": [[1,0]]}"#).unwrap();
        assert!(matches!(j.to_matrix(), Err(Error::Domain(_))));
        assert!(parse_matrix("{not json").is_err());
        let z = parse_matrix(r#"{"rows": 0, "cols": 0, "data": []}"#).unwrap();
        assert!(z.to_matrix().is_err());
    }

    #[test]
    fn kind_field_round_trips() {
        let m = MatrixJson::from_matrix(&crate::matrix::eye(2)).with_kind(MapKind::Conjugation);
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"kind\":\"conjugation\""));
        assert_eq!(parse_matrix(&text).unwrap(), m);
    }
}
