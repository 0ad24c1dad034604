//! Reports: what a command computed, and whether its checks held.
//!
//! The structured form uses the keys `command`, `verdict`, `window`,
//! `entries`, `certificates`; absent parts are omitted, so an empty report
//! serializes as `{"entries": []}`.

use blowup_core::graded::DegreeWindow;
use blowup_core::AlgebraError;
use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    /// A computation with nothing to check.
    Ok,
    Pass,
    Fail,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Ok | Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 3,
        }
    }

    pub fn from_pass(pass: bool) -> Self {
        if pass {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    /// The weaker of two verdicts: inconclusive beats fail beats pass beats ok.
    pub fn and(self, other: Verdict) -> Verdict {
        let rank = |v: Verdict| match v {
            Verdict::Ok => 0,
            Verdict::Pass => 1,
            Verdict::Fail => 2,
            Verdict::Inconclusive => 3,
        };
        if rank(other) > rank(self) {
            other
        } else {
            self
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Ok => "ok",
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Report {
    #[serde(skip_serializing_if = "String::is_empty")]
    pub command: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub window: Option<DegreeWindow>,
    pub entries: Vec<Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Value>,
    /// Human-readable lines, in entry order.
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report { command: command.into(), verdict: Some(Verdict::Ok), ..Default::default() }
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict.unwrap_or(Verdict::Ok)
    }

    pub fn set_verdict(&mut self, v: Verdict) {
        self.verdict = Some(self.verdict().and(v));
    }

    pub fn entry(&mut self, value: impl Serialize, line: impl Into<String>) {
        self.entries.push(serde_json::to_value(value).expect("report values serialize"));
        self.text.push(line.into());
    }

    pub fn certificate(&mut self, value: impl Serialize, line: impl Into<String>) {
        self.certificates.push(serde_json::to_value(value).expect("report values serialize"));
        self.text.push(line.into());
    }

    /// Fold a sub-report (a suite member) into this one.
    pub fn absorb(&mut self, other: Report) {
        self.set_verdict(other.verdict());
        let v = other.verdict();
        let name = other.command.clone();
        self.text.push(format!("[{v}] {name}"));
        self.text.extend(other.text.iter().map(|l| format!("    {l}")));
        self.entries.push(serde_json::to_value(&other).expect("report values serialize"));
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report values serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.command.is_empty() {
            out.push_str(&format!("{}: {}", self.command, self.verdict()));
            if let Some(w) = self.window {
                out.push_str(&format!(" on {w}"));
            }
            out.push('\n');
        }
        for l in &self.text {
            out.push_str(l);
            out.push('\n');
        }
        out
    }

    /// Report for a computation that stopped before reaching a verdict.
    pub fn from_error(command: impl Into<String>, e: &AlgebraError) -> Self {
        let mut r = Report::new(command);
        r.verdict = Some(error_verdict(e));
        r.entry(serde_json::json!({ "error": e.to_string() }), format!("error: {e}"));
        r
    }
}

/// Resource limits and inconclusive scans map to `Inconclusive`; every
/// other error is a rejected input.
pub fn error_verdict(e: &AlgebraError) -> Verdict {
    match e {
        AlgebraError::ResourceLimit(_) | AlgebraError::Inconclusive(_) => Verdict::Inconclusive,
        _ => Verdict::Fail,
    }
}

/// Exit code for an error escaping a command: 2 for rejected input, 3 for limits.
pub fn error_exit_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::ResourceLimit(_) | AlgebraError::Inconclusive(_) => 3,
        _ => 2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_just_entries() {
        assert_eq!(serde_json::to_string(&Report::default()).unwrap(), r#"{"entries":[]}"#);
    }

    #[test]
    fn verdicts_combine_to_the_weakest() {
        assert_eq!(Verdict::Ok.and(Verdict::Pass), Verdict::Pass);
        assert_eq!(Verdict::Fail.and(Verdict::Pass), Verdict::Fail);
        assert_eq!(Verdict::Fail.and(Verdict::Inconclusive), Verdict::Inconclusive);
        assert_eq!(Verdict::Fail.exit_code(), 1);
    }

    #[test]
    fn keys_are_stable() {
        let mut r = Report::new("bound");
        r.window = Some(DegreeWindow::new(0, 4));
        r.set_verdict(Verdict::Pass);
        r.certificate(serde_json::json!({ "n": 0 }), "n = 0");
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        assert_eq!(keys, ["certificates", "command", "entries", "verdict", "window"]);
        assert_eq!(v["verdict"], "pass");
    }
}
