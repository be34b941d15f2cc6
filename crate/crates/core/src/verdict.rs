use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome of a structural check: either a pass, or the first failing
/// identity with a witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    /// Name of the identity or axiom that failed.
    pub check: String,
    /// Indices (elements, degrees, entries) locating the failure.
    pub witness: Vec<i64>,
    pub detail: String,
}

impl Verdict {
    pub fn pass() -> Self {
        Verdict { failure: None }
    }

    pub fn fail(check: impl Into<String>, witness: Vec<i64>, detail: impl Into<String>) -> Self {
        Verdict { failure: Some(Failure { check: check.into(), witness, detail: detail.into() }) }
    }

    pub fn is_pass(&self) -> bool {
        self.failure.is_none()
    }

    /// Evaluates `next` only if `self` passed.
    pub fn and_then(self, next: impl FnOnce() -> Verdict) -> Verdict {
        if self.is_pass() {
            next()
        } else {
            self
        }
    }

    pub fn check(&self) -> Option<&str> {
        self.failure.as_ref().map(|f| f.check.as_str())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass"),
            Some(x) => write!(f, "fail [{}] at {:?}: {}", x.check, x.witness, x.detail),
        }
    }
}
