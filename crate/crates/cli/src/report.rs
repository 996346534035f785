//! Machine-readable command reports.

use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InputRef {
    pub path: String,
    pub sha256: String,
}

impl InputRef {
    pub fn new(path: &Path, bytes: &[u8]) -> Self {
        Self {
            path: path.display().to_string(),
            sha256: format!("{:x}", Sha256::digest(bytes)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Timing {
    pub elapsed_ms: f64,
}

/// Everything except `timing` is a deterministic function of the command,
/// its flags and the input bytes.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReportDocument {
    pub command: String,
    pub inputs: Vec<InputRef>,
    pub results: Value,
    pub tolerances: Value,
    pub timing: Timing,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
