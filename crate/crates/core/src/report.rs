//! Machine-readable verification reports.
//!
//! Rationals are written as `"p/q"` strings and floats with 17 significant
//! digits, so a report is byte-identical across runs with the same
//! configuration. Wall-clock timings are only recorded on request.

use std::collections::BTreeMap;
use std::fmt::Display;
use std::time::Instant;

use serde::{Serialize, Serializer};

use crate::exact::Rational;
use crate::Result;

pub const SCHEMA: &str = "1";

pub(crate) fn ser_rational<S: Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// A float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

pub type Inputs = BTreeMap<String, String>;

/// Builds an [`Inputs`] map from `key => value` pairs of displayable values.
#[macro_export]
macro_rules! inputs {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = $crate::report::Inputs::new();
        $( m.insert($k.to_string(), $v.to_string()); )*
        m
    }};
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub inputs: Inputs,
    pub expected: String,
    pub computed: String,
    /// Whether the comparison was an exact rational equality.
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<String>,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<f64>,
}

/// The comparison a check made, without its name and inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub expected: String,
    pub computed: String,
    pub exact: bool,
    pub tolerance: Option<String>,
    pub pass: bool,
}

impl Outcome {
    /// Exact equality of two displayed values.
    pub fn exact(expected: impl Display, computed: impl Display, pass: bool) -> Self {
        Self {
            expected: expected.to_string(),
            computed: computed.to_string(),
            exact: true,
            tolerance: None,
            pass,
        }
    }

    pub fn equal(expected: &Rational, computed: &Rational) -> Self {
        Self::exact(expected, computed, expected == computed)
    }

    /// `|computed - expected| <= tol |expected|`
    pub fn relative(expected: f64, computed: f64, tol: f64) -> Self {
        let pass = (computed - expected).abs() <= tol * expected.abs();
        Self::float(expected, computed, format!("rel {}", fmt_f64(tol)), pass)
    }

    /// `|computed - expected| <= tol`
    pub fn absolute(expected: f64, computed: f64, tol: f64) -> Self {
        let pass = (computed - expected).abs() <= tol;
        Self::float(expected, computed, format!("abs {}", fmt_f64(tol)), pass)
    }

    /// A floating comparison judged by the caller.
    pub fn float(expected: f64, computed: f64, tolerance: String, pass: bool) -> Self {
        Self {
            expected: fmt_f64(expected),
            computed: fmt_f64(computed),
            exact: false,
            tolerance: Some(tolerance),
            pass: pass && computed.is_finite(),
        }
    }

    /// A property with a textual expectation, such as monotonicity.
    pub fn property(expected: impl Display, computed: impl Display, pass: bool) -> Self {
        Self {
            expected: expected.to_string(),
            computed: computed.to_string(),
            exact: false,
            tolerance: None,
            pass,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerificationReport {
    pub schema: &'static str,
    pub suite: String,
    pub config: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub summary: Summary,
    pub pass: bool,
}

impl VerificationReport {
    pub fn new(suite: impl Into<String>, config: BTreeMap<String, String>, checks: Vec<Check>) -> Self {
        let passed = checks.iter().filter(|c| c.pass).count();
        let summary = Summary {
            total: checks.len(),
            passed,
            failed: checks.len() - passed,
        };
        Self {
            schema: SCHEMA,
            suite: suite.into(),
            config,
            pass: summary.failed == 0,
            checks,
            summary,
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Collects checks in the order they are run.
#[derive(Debug, Default)]
pub struct Recorder {
    checks: Vec<Check>,
    timing: bool,
}

impl Recorder {
    pub fn new(timing: bool) -> Self {
        Self {
            checks: Vec::new(),
            timing,
        }
    }

    /// Runs `f` and records its outcome; an error becomes a failed check.
    pub fn check(&mut self, name: &str, inputs: Inputs, f: impl FnOnce() -> Result<Outcome>) {
        let start = Instant::now();
        let outcome = f();
        let runtime_ms = self.timing.then(|| start.elapsed().as_secs_f64() * 1e3);
        let outcome = outcome.unwrap_or_else(|e| Outcome {
            expected: "no error".into(),
            computed: format!("error: {e}"),
            exact: false,
            tolerance: None,
            pass: false,
        });
        self.checks.push(Check {
            name: name.into(),
            inputs,
            expected: outcome.expected,
            computed: outcome.computed,
            exact: outcome.exact,
            tolerance: outcome.tolerance,
            pass: outcome.pass,
            runtime_ms,
        });
    }

    pub fn into_checks(self) -> Vec<Check> {
        self.checks
    }
}
