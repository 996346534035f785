//! `gweave/1` JSON documents holding one g-frame.

use std::fs;
use std::path::Path;

use gweave_core::{GFrame, Matrix, Scalar};
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "gweave/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScalarMode {
    Real,
    Complex,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OperatorEntry {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub rows: usize,
    /// Row-major, `rows × domain_dim` values.
    pub entries_real: Vec<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entries_imag: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GFrameDocument {
    pub schema_version: String,
    pub scalar_mode: ScalarMode,
    pub domain_dim: usize,
    pub operators: Vec<OperatorEntry>,
}

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("schema error in operator {label}: {message}")]
    Schema { label: String, message: String },
    #[error("schema error: {0}")]
    Document(String),
    #[error(transparent)]
    Shape(#[from] gweave_core::Error),
}

impl OperatorEntry {
    fn display_label(&self, index: usize) -> String {
        match &self.label {
            Some(l) => format!("'{l}'"),
            None => format!("#{}", index + 1),
        }
    }
}

impl GFrameDocument {
    /// Canonical document for `f`: real mode whenever every imaginary part
    /// is exactly zero.
    pub fn from_gframe(f: &GFrame) -> Self {
        let real = f
            .blocks()
            .iter()
            .all(|b| b.as_slice().iter().all(|z| z.im == 0.0));
        let operators = f
            .blocks()
            .iter()
            .zip(f.labels())
            .map(|(b, label)| OperatorEntry {
                label: label.clone(),
                rows: b.rows(),
                entries_real: b.as_slice().iter().map(|z| z.re).collect(),
                entries_imag: (!real).then(|| b.as_slice().iter().map(|z| z.im).collect()),
            })
            .collect();
        Self {
            schema_version: SCHEMA_VERSION.to_string(),
            scalar_mode: if real { ScalarMode::Real } else { ScalarMode::Complex },
            domain_dim: f.domain_dim(),
            operators,
        }
    }

    /// Validates every operator before building anything.
    pub fn to_gframe(&self) -> Result<GFrame, FormatError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(FormatError::Document(format!(
                "schema_version is '{}', expected '{SCHEMA_VERSION}'",
                self.schema_version
            )));
        }
        let d = self.domain_dim;
        let mut blocks = Vec::with_capacity(self.operators.len());
        for (i, op) in self.operators.iter().enumerate() {
            let schema = |message: String| FormatError::Schema {
                label: op.display_label(i),
                message,
            };
            let want = op.rows * d;
            if op.entries_real.len() != want {
                return Err(schema(format!(
                    "entries_real has {} values, rows × domain_dim = {} × {d} = {want}",
                    op.entries_real.len(),
                    op.rows
                )));
            }
            let imag = match (self.scalar_mode, &op.entries_imag) {
                (ScalarMode::Real, None) => vec![0.0; want],
                (ScalarMode::Real, Some(_)) => {
                    return Err(schema("entries_imag given in real scalar mode".into()));
                }
                (ScalarMode::Complex, None) => {
                    return Err(schema("entries_imag missing in complex scalar mode".into()));
                }
                (ScalarMode::Complex, Some(im)) if im.len() != want => {
                    return Err(schema(format!(
                        "entries_imag has {} values, expected {want}",
                        im.len()
                    )));
                }
                (ScalarMode::Complex, Some(im)) => im.clone(),
            };
            let data = op
                .entries_real
                .iter()
                .zip(&imag)
                .map(|(&re, &im)| Scalar::new(re, im))
                .collect();
            blocks.push(Matrix::new(op.rows, d, data).map_err(|e| schema(e.to_string()))?);
        }
        let labels = self.operators.iter().map(|o| o.label.clone()).collect();
        Ok(GFrame::new(d, blocks)?.with_labels(labels)?)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }
}

pub fn parse_gframe(text: &str) -> Result<GFrame, FormatError> {
    let doc: GFrameDocument = serde_json::from_str(text).map_err(|e| FormatError::Parse {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    doc.to_gframe()
}

pub fn read_file(path: &Path) -> Result<Vec<u8>, FormatError> {
    fs::read(path).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

pub fn load_gframe(path: &Path) -> Result<GFrame, FormatError> {
    let bytes = read_file(path)?;
    let text = std::str::from_utf8(&bytes).map_err(|e| FormatError::Parse {
        line: 0,
        column: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    parse_gframe(text)
}

pub fn save_gframe(path: &Path, f: &GFrame) -> Result<(), FormatError> {
    fs::write(path, GFrameDocument::from_gframe(f).to_json()).map_err(|source| FormatError::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_BLOCKS: &str = r#"{
  "schema_version": "gweave/1",
  "scalar_mode": "real",
  "domain_dim": 2,
  "operators": [
    {
      "label": "a",
      "rows": 1,
      "entries_real": [
        1.0,
        0.0
      ]
    },
    {
      "label": "b",
      "rows": 1,
      "entries_real": [
        1.0,
        1.0
      ]
    }
  ]
}
"#;

    #[test]
    fn loads_two_blocks_and_round_trips() {
        let f = parse_gframe(TWO_BLOCKS).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.labels()[1].as_deref(), Some("b"));
        assert_eq!(GFrameDocument::from_gframe(&f).to_json(), TWO_BLOCKS);
    }

    #[test]
    fn schema_error_names_label() {
        let bad = TWO_BLOCKS.replace("1.0,\n        1.0", "1.0");
        match parse_gframe(&bad) {
            Err(FormatError::Schema { label, .. }) => assert_eq!(label, "'b'"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn parse_error_has_position() {
        match parse_gframe("{\n  \"schema_version\": \"gweave/1\",\n  oops") {
            Err(FormatError::Parse { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn complex_mode_requires_imaginary_parts() {
        let c = TWO_BLOCKS.replace("\"real\"", "\"complex\"");
        assert!(matches!(parse_gframe(&c), Err(FormatError::Schema { .. })));
        let wrong_version = TWO_BLOCKS.replace("gweave/1", "gweave/2");
        assert!(matches!(parse_gframe(&wrong_version), Err(FormatError::Document(_))));
        let no_ops = r#"{"schema_version":"gweave/1","scalar_mode":"real","domain_dim":2,"operators":[]}"#;
        assert!(matches!(parse_gframe(no_ops), Err(FormatError::Shape(gweave_core::Error::Empty))));
    }

    #[test]
    fn complex_round_trip() {
        let m = Matrix::new(1, 2, vec![Scalar::new(0.5, -0.25), Scalar::new(0.0, 1.0)]).unwrap();
        let f = GFrame::new(2, vec![m]).unwrap();
        let doc = GFrameDocument::from_gframe(&f);
        assert_eq!(doc.scalar_mode, ScalarMode::Complex);
        let back = parse_gframe(&doc.to_json()).unwrap();
        assert_eq!(back.blocks(), f.blocks());
    }
}
