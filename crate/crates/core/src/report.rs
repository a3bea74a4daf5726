use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }

    fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub observed: Value,
    pub verdict: Verdict,
}

impl Check {
    /// Passes when `observed == expected`.
    pub fn equal(name: &str, expected: impl Into<Value>, observed: impl Into<Value>) -> Self {
        let (expected, observed) = (expected.into(), observed.into());
        let verdict = Verdict::from_bool(expected == observed);
        Check {
            name: name.to_string(),
            expected,
            observed,
            verdict,
        }
    }

    pub fn with_verdict(
        name: &str,
        expected: impl Into<Value>,
        observed: impl Into<Value>,
        ok: bool,
    ) -> Self {
        Check {
            name: name.to_string(),
            expected: expected.into(),
            observed: observed.into(),
            verdict: Verdict::from_bool(ok),
        }
    }

    /// A check that could not be evaluated.
    pub fn errored(name: &str, expected: impl Into<Value>, err: impl std::fmt::Display) -> Self {
        Check {
            name: name.to_string(),
            expected: expected.into(),
            observed: Value::String(format!("error: {err}")),
            verdict: Verdict::Fail,
        }
    }
}

/// Run parameters echoed into the report.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Params {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u64>,
    pub seed: u64,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub params: Params,
    pub checks: Vec<Check>,
    pub verdict: Verdict,
    /// Only filled when timing is requested, so that reports stay
    /// reproducible byte for byte.
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coefficients: Option<Vec<Coefficient>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub monomial: String,
    pub exponents: Vec<u8>,
    pub value: u64,
}

impl Report {
    pub fn new(command: &str, params: Params, mut checks: Vec<Check>) -> Self {
        checks.sort_by(|a, b| a.name.cmp(&b.name));
        let verdict = Verdict::from_bool(checks.iter().all(|c| c.verdict.is_pass()));
        Report {
            command: command.to_string(),
            params,
            checks,
            verdict,
            elapsed_ms: None,
            coefficients: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict.is_pass()
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let p = &self.params;
        let _ = write!(out, "command: {}\nparams:", self.command);
        for (key, val) in [
            ("n", p.n.map(|v| v as u64)),
            ("r", p.r.map(|v| v as u64)),
            ("p", p.p),
            ("q", p.q),
        ] {
            if let Some(v) = val {
                let _ = write!(out, " {key}={v}");
            }
        }
        let _ = writeln!(out, " seed={} trials={}", p.seed, p.trials);
        if let Some(coeffs) = &self.coefficients {
            for c in coeffs {
                let _ = writeln!(out, "  {} {}", c.monomial, c.value);
            }
        }
        for c in &self.checks {
            let _ = writeln!(
                out,
                "{} {} expected={} observed={}",
                c.verdict.label(),
                c.name,
                c.expected,
                c.observed
            );
        }
        let _ = writeln!(
            out,
            "verdict: {}",
            if self.passed() { "pass" } else { "fail" }
        );
        if let Some(ms) = self.elapsed_ms {
            let _ = writeln!(out, "elapsed_ms: {ms}");
        }
        out
    }
}
