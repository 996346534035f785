use alloc::string::{String, ToString};
use alloc::vec::Vec;

/// Outcome of one executable theorem or example check.
#[derive(Clone, Debug, PartialEq)]
pub struct VerificationRecord {
    pub name: String,
    pub passed: bool,
    /// Named numbers the check computed, in insertion order.
    pub values: Vec<(String, f64)>,
    pub detail: String,
}

impl VerificationRecord {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed: true,
            values: Vec::new(),
            detail: String::new(),
        }
    }

    pub fn value(mut self, key: &str, v: f64) -> Self {
        self.values.push((key.to_string(), v));
        self
    }

    /// Records a sub-assertion; the record fails if any assertion fails.
    pub fn require(mut self, ok: bool, what: &str) -> Self {
        if !ok {
            self.passed = false;
            if !self.detail.is_empty() {
                self.detail.push_str("; ");
            }
            self.detail.push_str("failed: ");
            self.detail.push_str(what);
        }
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        if !self.detail.is_empty() {
            self.detail.push_str("; ");
        }
        self.detail.push_str(text);
        self
    }

    pub fn get(&self, key: &str) -> Option<f64> {
        self.values.iter().find(|(k, _)| k == key).map(|(_, v)| *v)
    }
}
