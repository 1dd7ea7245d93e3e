//! Check results and the JSON report that collects them.

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub check_id: String,
    pub instance: String,
    pub expected: Value,
    pub observed: Value,
    pub pass: bool,
    /// Certificate or counterexample backing the observed value.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckResult {
    pub fn new(
        check_id: &str,
        instance: impl Into<String>,
        expected: impl Serialize,
        observed: impl Serialize,
        witness: Option<Value>,
    ) -> CheckResult {
        let expected = to_value(expected);
        let observed = to_value(observed);
        CheckResult {
            check_id: check_id.to_string(),
            instance: instance.into(),
            pass: expected == observed,
            expected,
            observed,
            witness,
        }
    }

    /// A check that could not be evaluated.
    pub fn error(
        check_id: &str,
        instance: impl Into<String>,
        expected: impl Serialize,
        err: impl std::fmt::Display,
    ) -> CheckResult {
        CheckResult::new(check_id, instance, expected, format!("error: {err}"), None)
    }
}

pub fn to_value(v: impl Serialize) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub suite: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(suite: impl Into<String>, results: Vec<CheckResult>) -> Report {
        let passed = results.iter().filter(|r| r.pass).count();
        Report {
            schema: SCHEMA_VERSION,
            suite: suite.into(),
            summary: Summary {
                total: results.len(),
                passed,
                failed: results.len() - passed,
            },
            results,
        }
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results.iter().filter(|r| !r.pass)
    }

    /// Pretty-printed JSON with a trailing newline. Object keys are sorted,
    /// so equal reports give equal bytes.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
