//! Report assembly and rendering.
//!
//! JSON schema: `{command, config, results: [{name, status, params, value?,
//! witness?, timing_ms}]}`. Maps are emitted with sorted keys, so identical
//! runs produce identical bytes.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{Map, Value};

use crate::config::{Format, RunConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// A computation finished.
    Ok,
    /// A check held.
    Pass,
    /// A check failed; the record carries a witness.
    Fail,
}

impl Status {
    fn label(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub name: String,
    pub status: Status,
    pub params: Map<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<Map<String, Value>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Map<String, Value>>,
    pub timing_ms: Option<f64>,
}

impl Record {
    pub fn new(name: impl Into<String>, status: Status, params: Map<String, Value>) -> Self {
        Record {
            name: name.into(),
            status,
            params,
            value: None,
            witness: None,
            timing_ms: None,
        }
    }

    pub fn with_value(mut self, value: Map<String, Value>) -> Self {
        self.value = Some(value);
        self
    }

    pub fn with_witness(mut self, witness: Map<String, Value>) -> Self {
        self.witness = Some(witness);
        self
    }

    /// A pass/fail check: the witness is attached only on failure.
    pub fn check(
        name: impl Into<String>,
        holds: bool,
        params: Map<String, Value>,
        witness: Map<String, Value>,
    ) -> Self {
        let r = Record::new(name, if holds { Status::Pass } else { Status::Fail }, params);
        if holds {
            r
        } else {
            r.with_witness(witness)
        }
    }
}

/// Builds a JSON object from `key => value` pairs.
#[macro_export]
macro_rules! obj {
    ($($k:expr => $v:expr),* $(,)?) => {{
        #[allow(unused_mut)]
        let mut m = serde_json::Map::new();
        $( m.insert(String::from($k), serde_json::json!($v)); )*
        m
    }};
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub config: RunConfig,
    pub results: Vec<Record>,
}

impl Report {
    pub fn failed(&self) -> bool {
        self.results.iter().any(|r| r.status == Status::Fail)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Csv => self.render_csv(),
            Format::Text => self.render_text(),
        }
    }

    fn render_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["name", "status", "params", "value", "witness", "timing_ms"])
            .expect("in-memory write");
        for r in &self.results {
            let compact = |m: &Option<Map<String, Value>>| {
                m.as_ref()
                    .map(|m| Value::Object(m.clone()).to_string())
                    .unwrap_or_default()
            };
            w.write_record([
                r.name.clone(),
                r.status.label().to_lowercase(),
                Value::Object(r.params.clone()).to_string(),
                compact(&r.value),
                compact(&r.witness),
                r.timing_ms.map(|t| t.to_string()).unwrap_or_default(),
            ])
            .expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8")
    }

    fn render_text(&self) -> String {
        let mut s = String::new();
        let c = &self.config;
        let _ = writeln!(s, "$ {}", self.command);
        let prime = c.prime.map(|p| p.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(
            s,
            "prime {prime}; vars {}; order {}; e_max {}; seed {}; trials {}",
            c.vars.join(","),
            c.order,
            c.e_max,
            c.seed,
            c.trials
        );
        for r in &self.results {
            let params: Vec<String> = r.params.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect();
            let _ = write!(s, "{} {} {}", r.status.label(), r.name, params.join(" "));
            if let Some(t) = r.timing_ms {
                let _ = write!(s, " [{t:.3} ms]");
            }
            s.push('\n');
            for (label, m) in [("", &r.value), ("witness ", &r.witness)] {
                if let Some(m) = m {
                    for (k, v) in m {
                        let _ = writeln!(s, "  {label}{k}: {}", plain(v));
                    }
                }
            }
        }
        let failed = self.results.iter().filter(|r| r.status == Status::Fail).count();
        let checks = self.results.iter().filter(|r| r.status != Status::Ok).count();
        if checks > 0 {
            let _ = writeln!(
                s,
                "summary: {checks} checks, {} passed, {failed} failed",
                checks - failed
            );
        }
        s
    }
}

/// Strings without quotes, everything else as compact JSON.
fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(plain).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
