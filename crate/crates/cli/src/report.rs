//! Reports: the JSON output format (`"schema": 1`) and its text rendering.

use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::commands::{Outcome, Status};
use crate::error::CliError;

pub const REPORT_SCHEMA: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub problem: Option<String>,
    pub seed: u64,
    pub results: Vec<TaskResult>,
    pub exit_code: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TaskStatus {
    Ok,
    SampledNegative,
    ExpectationFailed,
    Invalid,
    Malformed,
}

impl TaskStatus {
    pub fn exit_code(self) -> u8 {
        match self {
            TaskStatus::Ok => 0,
            TaskStatus::SampledNegative => 3,
            TaskStatus::ExpectationFailed | TaskStatus::Invalid => 2,
            TaskStatus::Malformed => 4,
        }
    }

    fn severity(self) -> u8 {
        match self.exit_code() {
            4 => 3,
            2 => 2,
            3 => 1,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TaskResult {
    pub task: String,
    #[serde(default, skip_serializing_if = "Value::is_null")]
    pub args: Value,
    pub status: TaskStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub result: Option<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_us: Option<u64>,
}

impl TaskResult {
    pub fn from_outcome(task: String, args: Value, outcome: Outcome, expect: Option<&Value>) -> Self {
        match outcome {
            Ok((value, status)) => {
                let mismatches = expect.map(|e| mismatches(e, &value)).unwrap_or_default();
                let status = if !mismatches.is_empty() {
                    TaskStatus::ExpectationFailed
                } else if status == Status::SampledNegative {
                    TaskStatus::SampledNegative
                } else {
                    TaskStatus::Ok
                };
                let error = (!mismatches.is_empty()).then(|| mismatches.join("; "));
                TaskResult { task, args, status, result: Some(value), error, elapsed_us: None }
            }
            Err(e) => Self::failure(task, args, &e),
        }
    }

    pub fn failure(task: String, args: Value, e: &CliError) -> Self {
        let status = match e {
            CliError::Malformed(_) => TaskStatus::Malformed,
            CliError::Validation(_) => TaskStatus::Invalid,
        };
        TaskResult { task, args, status, result: None, error: Some(e.message().to_string()), elapsed_us: None }
    }
}

/// Keys of `expect` whose values differ from `actual`.
fn mismatches(expect: &Value, actual: &Value) -> Vec<String> {
    let Some(map) = expect.as_object() else {
        return vec!["`expect` must be an object".into()];
    };
    map.iter()
        .filter_map(|(k, want)| {
            let got = actual.get(k).unwrap_or(&Value::Null);
            (got != want).then(|| format!("{k}: expected {want}, got {got}"))
        })
        .collect()
}

impl Report {
    pub fn new(command: &str, problem: Option<String>, seed: u64, results: Vec<TaskResult>) -> Self {
        let exit_code = results.iter().map(|r| r.status).max_by_key(|s| s.severity()).map_or(0, TaskStatus::exit_code);
        Report { schema: REPORT_SCHEMA, command: command.to_string(), problem, seed, results, exit_code }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = write!(out, "{} (seed {:#x}", self.command, self.seed);
        if let Some(p) = &self.problem {
            let _ = write!(out, ", problem {p}");
        }
        out.push_str(")\n");
        for r in &self.results {
            let _ = writeln!(out, "[{}] {}", status_label(r.status), r.task);
            if let Some(e) = &r.error {
                let _ = writeln!(out, "  error: {e}");
            }
            if let Some(v) = &r.result {
                render(&mut out, "", v);
            }
            if let Some(us) = r.elapsed_us {
                let _ = writeln!(out, "  elapsed: {us} us");
            }
        }
        let ok = self.results.iter().filter(|r| r.status == TaskStatus::Ok).count();
        let _ = writeln!(out, "{ok} of {} tasks ok, exit {}", self.results.len(), self.exit_code);
        out
    }
}

fn status_label(s: TaskStatus) -> &'static str {
    match s {
        TaskStatus::Ok => "ok",
        TaskStatus::SampledNegative => "sampled negative",
        TaskStatus::ExpectationFailed => "expectation failed",
        TaskStatus::Invalid => "invalid",
        TaskStatus::Malformed => "malformed",
    }
}

fn render(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(map) => {
            for (k, x) in map {
                let key = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render(out, &key, x);
            }
        }
        Value::Array(items) if items.iter().any(|x| x.is_object()) => {
            for (i, x) in items.iter().enumerate() {
                render(out, &format!("{prefix}[{}]", i + 1), x);
            }
        }
        _ => {
            let _ = writeln!(out, "  {prefix}: {}", inline(v));
        }
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(items) => format!("[{}]", items.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}
