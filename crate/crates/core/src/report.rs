//! Check records and suite reports shared between the verification
//! routines and the command line driver.

use serde::Serialize;

/// One verified identity: id, deciding tier, worst residual, elapsed time.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub tier: String,
    pub residual: f64,
    pub pass: bool,
    pub ms: u128,
}

impl CheckRecord {
    pub fn symbolic(id: impl Into<String>, pass: bool, ms: u128) -> Self {
        CheckRecord { id: id.into(), tier: "symbolic".into(), residual: 0.0, pass, ms }
    }

    pub fn numeric(id: impl Into<String>, residual: f64, pass: bool, ms: u128) -> Self {
        CheckRecord { id: id.into(), tier: "numeric".into(), residual, pass, ms }
    }
}

/// Echo of the policy that produced a report, for reproducibility.
#[derive(Clone, Debug, Serialize)]
pub struct PolicyEcho {
    pub precision_digits: u32,
    pub max_product_index: u32,
    pub tol: f64,
    pub samples: u32,
    pub seed: u64,
}

impl From<&crate::numeric::NumericPolicy> for PolicyEcho {
    fn from(p: &crate::numeric::NumericPolicy) -> Self {
        PolicyEcho {
            precision_digits: p.precision_digits,
            max_product_index: p.max_product_index,
            tol: p.tol,
            samples: p.samples,
            seed: p.seed,
        }
    }
}

/// A named suite of checks with an overall verdict.
#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub policy: PolicyEcho,
    pub checks: Vec<CheckRecord>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn new(suite: impl Into<String>, policy: PolicyEcho) -> Self {
        SuiteReport { suite: suite.into(), policy, checks: Vec::new(), pass: true }
    }

    pub fn push(&mut self, check: CheckRecord) {
        self.pass &= check.pass;
        self.checks.push(check);
    }

    pub fn merge(&mut self, other: SuiteReport) {
        for c in other.checks {
            self.push(c);
        }
    }
}

/// Runs a closure and wraps its (pass, tier, residual) result in a record.
pub fn timed_check<F>(id: &str, f: F) -> CheckRecord
where
    F: FnOnce() -> (bool, String, f64),
{
    let start = std::time::Instant::now();
    let (pass, tier, residual) = f();
    CheckRecord { id: id.to_string(), tier, residual, pass, ms: start.elapsed().as_millis() }
}
