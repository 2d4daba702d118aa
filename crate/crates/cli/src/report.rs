use std::time::Duration;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Error => 2,
        }
    }
}

/// The outcome of one command, rendered as JSON (sorted keys) or text.
pub struct Report {
    pub command: &'static str,
    pub instance: Option<Value>,
    pub status: Status,
    pub result: Value,
    pub witnesses: Vec<Value>,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, instance: Option<Value>) -> Self {
        Report {
            command,
            instance,
            status: Status::Pass,
            result: Value::Null,
            witnesses: Vec::new(),
            lines: Vec::new(),
        }
    }

    pub fn error(command: &'static str, message: &str) -> Self {
        let mut r = Report::new(command, None);
        r.status = Status::Error;
        r.result = json!({ "message": message });
        r
    }

    pub fn fail(&mut self, witness: Value) {
        self.status = Status::Fail;
        self.witnesses.push(witness);
    }

    pub fn line(&mut self, text: impl Into<String>) {
        self.lines.push(text.into());
    }

    pub fn to_json(&self, elapsed: Option<Duration>) -> String {
        let mut v = json!({
            "tool": { "name": "tangles", "version": env!("CARGO_PKG_VERSION") },
            "command": self.command,
            "instance": self.instance.clone().unwrap_or(Value::Null),
            "status": self.status.as_str(),
            "result": self.result,
            "witnesses": self.witnesses,
        });
        if let Some(t) = elapsed {
            v["timing_ms"] = json!(t.as_secs_f64() * 1000.0);
        }
        serde_json::to_string_pretty(&v).expect("values serialize") + "\n"
    }

    pub fn to_text(&self, elapsed: Option<Duration>) -> String {
        let mut out = String::new();
        if let Some(inst) = &self.instance {
            out.push_str(&format!(
                "instance: {} ({}, size {})\n",
                inst["spec"].as_str().unwrap_or("?"),
                inst["kind"].as_str().unwrap_or("?"),
                inst["size"]
            ));
        }
        for l in &self.lines {
            out.push_str(l);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status.as_str()));
        if let Some(t) = elapsed {
            out.push_str(&format!("time: {:.3} ms\n", t.as_secs_f64() * 1000.0));
        }
        out
    }
}
