use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

pub type Params = BTreeMap<String, Value>;

/// One line of output.
#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub params: Params,
    pub lhs: Value,
    pub rhs: Value,
    pub pass: bool,
    pub elapsed_ms: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl CheckReport {
    pub fn new(check: &str, params: &Params, lhs: impl Serialize, rhs: impl Serialize, pass: bool) -> Self {
        CheckReport {
            check: check.to_string(),
            params: params.clone(),
            lhs: serde_json::to_value(lhs).expect("serializable"),
            rhs: serde_json::to_value(rhs).expect("serializable"),
            pass,
            elapsed_ms: 0,
            detail: None,
            error: None,
        }
    }

    /// `lhs == rhs` decides the outcome.
    pub fn equality(check: &str, params: &Params, lhs: impl Serialize, rhs: impl Serialize) -> Self {
        let mut r = Self::new(check, params, lhs, rhs, false);
        r.pass = r.lhs == r.rhs;
        r
    }

    pub fn failed(check: &str, params: &Params, error: String) -> Self {
        let mut r = Self::new(check, params, Value::Null, Value::Null, false);
        r.error = Some(error);
        r
    }

    pub fn with_detail(mut self, detail: impl Serialize) -> Self {
        self.detail = Some(serde_json::to_value(detail).expect("serializable"));
        self
    }
}

fn compact(v: &Value, width: usize) -> String {
    let s = match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    };
    if s.chars().count() > width {
        let cut: String = s.chars().take(width.saturating_sub(3)).collect();
        format!("{cut}...")
    } else {
        s
    }
}

pub fn render_table(reports: &[CheckReport]) -> String {
    let rows: Vec<[String; 6]> = reports
        .iter()
        .map(|r| {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", compact(v, 20))).collect();
            let status = match (&r.error, r.pass) {
                (Some(_), _) => "ERROR".to_string(),
                (None, true) => "pass".to_string(),
                (None, false) => "FAIL".to_string(),
            };
            [
                r.check.clone(),
                params.join(" "),
                compact(&r.lhs, 32),
                compact(&r.rhs, 32),
                status,
                r.elapsed_ms.to_string(),
            ]
        })
        .collect();
    let header = ["check", "params", "lhs", "rhs", "status", "ms"];
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let mut out = String::new();
    let mut line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", padded.join("  ").trim_end());
    };
    line(header.to_vec());
    for row in &rows {
        line(row.iter().map(String::as_str).collect());
    }
    out
}
