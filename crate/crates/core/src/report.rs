//! Structured check results.

use std::fmt;

use serde::{Deserialize, Serialize};

/// One side of a violated identity: a single index-structure element, or a
/// serialized linear combination (`[coefficient, basis]` pairs in basis order).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Side {
    Element(String),
    Combination(Vec<(String, String)>),
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Side::Element(e) => f.write_str(e),
            Side::Combination(terms) if terms.is_empty() => f.write_str("0"),
            Side::Combination(terms) => {
                for (i, (k, b)) in terms.iter().enumerate() {
                    if i > 0 {
                        f.write_str(" + ")?;
                    }
                    write!(f, "{k} * {b}")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Identifier of the failing identity, e.g. `assoc` or `dend.2`.
    pub equation: String,
    /// Names of the index elements instantiated for the failure.
    pub indices: Vec<String>,
    /// Names of the basis elements instantiated for the failure (empty for
    /// checks on index structures).
    pub basis: Vec<String>,
    pub lhs: Side,
    pub rhs: Side,
}

impl fmt::Display for Counterexample {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at indices ({})", self.equation, self.indices.join(", "))?;
        if !self.basis.is_empty() {
            write!(f, " on basis ({})", self.basis.join(", "))?;
        }
        write!(f, ": {} != {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub check: String,
    pub passed: bool,
    /// Number of domain points (index tuple × basis tuple) in the check.
    pub instances: u64,
    pub counterexample: Option<Counterexample>,
}

impl Report {
    pub fn pass(check: impl Into<String>, instances: u64) -> Self {
        Report {
            check: check.into(),
            passed: true,
            instances,
            counterexample: None,
        }
    }

    pub fn fail(check: impl Into<String>, instances: u64, cx: Counterexample) -> Self {
        Report {
            check: check.into(),
            passed: false,
            instances,
            counterexample: Some(cx),
        }
    }

    pub fn from_outcome(
        check: impl Into<String>,
        instances: u64,
        cx: Option<Counterexample>,
    ) -> Self {
        match cx {
            None => Report::pass(check, instances),
            Some(cx) => Report::fail(check, instances, cx),
        }
    }

    pub fn summary(&self) -> String {
        match &self.counterexample {
            None => format!("{}: pass ({} instances)", self.check, self.instances),
            Some(cx) => format!("{}: FAIL ({} instances): {}", self.check, self.instances, cx),
        }
    }
}
