//! Validation reports. A validator never fails with an error; it returns
//! the list of violated axioms, each with a witness message.

use serde::{Deserialize, Serialize};

/// One violated axiom, with a human-readable witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    /// Dotted axiom name, e.g. `conflict.hereditary` or `uniform.multiplication`.
    pub axiom: String,
    /// Witness for the violation.
    pub message: String,
}

/// Outcome of running a validator: violations plus informational notes
/// (e.g. repairs a constructor applied and wants on the record).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new() -> Self {
        Report::default()
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn push(&mut self, axiom: &str, message: impl Into<String>) {
        self.violations.push(Violation {
            axiom: axiom.to_string(),
            message: message.into(),
        });
    }

    pub fn note(&mut self, message: impl Into<String>) {
        self.notes.push(message.into());
    }

    pub fn merge(&mut self, other: Report) {
        self.violations.extend(other.violations);
        self.notes.extend(other.notes);
    }

    /// True when some violation's axiom equals `axiom` or starts with `axiom.`.
    pub fn violates(&self, axiom: &str) -> bool {
        self.violations
            .iter()
            .any(|v| v.axiom == axiom || v.axiom.starts_with(&format!("{axiom}.")))
    }

    pub fn summary(&self) -> String {
        if self.is_clean() {
            "clean".to_string()
        } else {
            self.violations
                .iter()
                .map(|v| format!("{}: {}", v.axiom, v.message))
                .collect::<Vec<_>>()
                .join("; ")
        }
    }
}

impl std::fmt::Display for Report {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.summary())
    }
}
