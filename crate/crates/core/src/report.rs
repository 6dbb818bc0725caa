//! JSON result records.
//!
//! Floats are written as decimal strings in shortest round-trip form and
//! rationals as `{"decimal", "exact"}` pairs; counts stay JSON integers.
//! Keys are sorted, so a record is a pure function of its contents.

use std::path::Path;

use serde_json::{json, Map, Value};

use crate::exact::{format_q, to_f64};
use crate::{Result, Q};

#[derive(Clone, Debug, PartialEq)]
pub struct RunRecord {
    pub command: String,
    pub seed: u64,
    pub config: Map<String, Value>,
    pub result: Map<String, Value>,
}

impl RunRecord {
    pub fn new(command: &str, seed: u64) -> Self {
        Self { command: command.into(), seed, config: Map::new(), result: Map::new() }
    }

    pub fn config(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.config.insert(key.into(), value.into());
        self
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.result.insert(key.into(), value.into());
    }

    pub fn to_value(&self) -> Value {
        let mut out = self.result.clone();
        out.insert("command".into(), json!(self.command));
        out.insert("seed".into(), json!(self.seed));
        out.insert("config".into(), Value::Object(self.config.clone()));
        Value::Object(out)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_value()).unwrap_or_default();
        s.push('\n');
        s
    }
}

pub fn num(x: f64) -> Value {
    Value::String(format!("{x:?}"))
}

pub fn point(p: [f64; 2]) -> Value {
    json!([num(p[0]), num(p[1])])
}

pub fn rational(x: &Q) -> Value {
    json!({ "decimal": format!("{:?}", to_f64(x)), "exact": format_q(x) })
}

pub fn emit_results(record: &RunRecord, path: &Path) -> Result<()> {
    std::fs::write(path, record.to_json())?;
    Ok(())
}
