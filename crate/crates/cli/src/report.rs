use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

#[derive(Clone, Debug, Serialize)]
pub struct Finding {
    pub check: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub detail: Value,
}

/// The JSON document every command emits.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub task: String,
    pub field: String,
    pub parameters: BTreeMap<String, Value>,
    pub findings: Vec<Finding>,
    pub counts: BTreeMap<String, u64>,
    pub nodes_visited: u64,
    pub complete: bool,
    /// Bulky outputs such as solution operators and witnesses.
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub artifacts: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_ms: Option<u64>,
}

impl Report {
    pub fn new(task: &str, field: &str) -> Self {
        Report {
            task: task.to_string(),
            field: field.to_string(),
            parameters: BTreeMap::new(),
            findings: Vec::new(),
            counts: BTreeMap::new(),
            nodes_visited: 0,
            complete: true,
            artifacts: BTreeMap::new(),
            wall_ms: None,
        }
    }

    pub fn param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn check(&mut self, name: &str, passed: bool, detail: Value) {
        self.findings.push(Finding {
            check: name.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            detail,
        });
    }

    pub fn skip(&mut self, name: &str, reason: &str) {
        self.findings.push(Finding {
            check: name.to_string(),
            status: Status::Skip,
            detail: Value::String(reason.to_string()),
        });
    }

    pub fn artifact(&mut self, key: &str, value: Value) {
        self.artifacts.insert(key.to_string(), value);
    }

    pub fn count(&mut self, name: &str, n: u64) {
        *self.counts.entry(name.to_string()).or_insert(0) += n;
    }

    pub fn failed(&self) -> bool {
        self.findings.iter().any(|f| f.status == Status::Fail)
    }

    /// 0 when everything passed and completed, 1 on any failure, 3 when
    /// something ran out of budget without failing.
    pub fn exit_code(&self) -> i32 {
        if self.failed() {
            1
        } else if !self.complete {
            3
        } else {
            0
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        let mut r = Report::new("t", "Q");
        assert_eq!(r.exit_code(), 0);
        r.skip("a", "why");
        assert_eq!(r.exit_code(), 0);
        r.complete = false;
        assert_eq!(r.exit_code(), 3);
        r.check("b", false, Value::Null);
        assert_eq!(r.exit_code(), 1);
    }

    #[test]
    fn serialized_shape() {
        let mut r = Report::new("t", "Fp:2");
        r.check("c", true, Value::Null);
        r.count("n", 2);
        r.count("n", 3);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["findings"][0], serde_json::json!({ "check": "c", "status": "pass" }));
        assert_eq!(v["counts"]["n"], 5);
        assert!(v.get("artifacts").is_none());
        assert!(v.get("wall_ms").is_none());
    }
}
