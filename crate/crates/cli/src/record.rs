use std::fmt::Write as _;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckKind {
    /// Passes when the measured value is at most the tolerance.
    Invariance,
    /// Passes when the measured value is at least the threshold.
    Witness,
}

impl CheckKind {
    pub fn passes(self, measured: f64, tolerance: f64) -> bool {
        match self {
            Self::Invariance => measured <= tolerance,
            Self::Witness => measured >= tolerance,
        }
    }
}

/// One line of the JSON-lines report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub mode: String,
    pub grid: String,
    pub measured: f64,
    pub tolerance: f64,
    pub kind: CheckKind,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<f64>,
}

impl CheckRecord {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("records serialize")
    }
}

pub fn to_json_lines(records: &[CheckRecord]) -> String {
    records.iter().map(|r| r.to_json_line() + "\n").collect()
}

/// Fixed-width summary, one row per record and a closing count.
pub fn summary_table(records: &[CheckRecord]) -> String {
    let width = records.iter().map(|r| r.id.len()).max().unwrap_or(2).max(5);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$}  {:<6}  {:>11}     {:>9}  grid",
        "check", "status", "measured", "tolerance"
    );
    for r in records {
        let status = if r.pass { "pass" } else { "FAIL" };
        let rel = match r.kind {
            CheckKind::Invariance => "<=",
            CheckKind::Witness => ">=",
        };
        let _ = writeln!(
            out,
            "{:<width$}  {:<6}  {:>11.3e}  {:>2} {:>9.1e}  {} {}",
            r.id, status, r.measured, rel, r.tolerance, r.grid, r.mode
        );
    }
    let failed = records.iter().filter(|r| !r.pass).count();
    let _ = writeln!(
        out,
        "{} checks, {} passed, {} failed",
        records.len(),
        records.len() - failed,
        failed
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(kind: CheckKind, measured: f64) -> CheckRecord {
        CheckRecord {
            id: "x.y".into(),
            claim: "c".into(),
            mode: "spectral".into(),
            grid: "32x32".into(),
            measured,
            tolerance: 1e-3,
            kind,
            pass: kind.passes(measured, 1e-3),
            wall_ms: None,
        }
    }

    #[test]
    fn pass_rule_depends_on_kind() {
        assert!(CheckKind::Invariance.passes(1e-4, 1e-3));
        assert!(!CheckKind::Invariance.passes(1e-2, 1e-3));
        assert!(CheckKind::Witness.passes(1e-2, 1e-3));
        assert!(!CheckKind::Witness.passes(f64::NAN, 1e-3));
        assert!(!CheckKind::Invariance.passes(f64::NAN, 1e-3));
    }

    #[test]
    fn json_line_layout() {
        let line = record(CheckKind::Witness, 0.5).to_json_line();
        assert_eq!(
            line,
            r#"{"id":"x.y","claim":"c","mode":"spectral","grid":"32x32","measured":0.5,"tolerance":0.001,"kind":"witness","pass":true}"#
        );
        let timed = CheckRecord {
            wall_ms: Some(2.0),
            ..record(CheckKind::Invariance, 0.5)
        };
        assert!(timed
            .to_json_line()
            .ends_with(r#""pass":false,"wall_ms":2.0}"#));
    }

    #[test]
    fn summary_counts_failures() {
        let t = summary_table(&[
            record(CheckKind::Witness, 0.5),
            record(CheckKind::Invariance, 0.5),
        ]);
        assert!(t.ends_with("2 checks, 1 passed, 1 failed\n"));
        assert!(t.contains("FAIL"));
    }
}
