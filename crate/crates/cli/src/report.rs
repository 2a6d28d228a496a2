//! Report shape shared by every command, and its two renderings.

use serde::Serialize;
use serde_json::{json, Value};
use sftclass::{Error, FgAbelianGroup, GroupElement};

pub const CONVENTION: &str =
    "COE compares (BF(A^t), u_A) with BF(A^t) = Z^N/(id-A^t)Z^N and u_A the class of (1,...,1); \
     flow equivalence compares BF(A) = Z^N/(id-A)Z^N";

/// Process exit status; the numeric values are part of the CLI contract.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Success = 0,
    Negative = 1,
    Invalid = 2,
    Undecided = 3,
}

#[derive(Debug, Serialize)]
pub struct Input {
    pub role: &'static str,
    pub path: String,
    pub content: Value,
}

/// Everything above `timing` is a pure function of the inputs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub convention: Option<&'static str>,
    pub inputs: Vec<Input>,
    pub outcome: &'static str,
    pub result: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing: Option<Value>,
    #[serde(skip)]
    pub status: Status,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            convention: None,
            inputs: Vec::new(),
            outcome: "ok",
            result: Value::Null,
            timing: None,
            status: Status::Success,
            text: Vec::new(),
        }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.text.push(s.into());
    }

    pub fn finish(&mut self, status: Status, outcome: &'static str, result: Value) {
        self.status = status;
        self.outcome = outcome;
        self.result = result;
    }

    pub fn fail(&mut self, err: &CliError) {
        self.status = err.status;
        self.outcome = if err.status == Status::Undecided { "undecided" } else { "error" };
        self.result = json!({ "error": err.message });
        self.text = vec![match err.status {
            Status::Undecided => err.message.clone(),
            _ => format!("error: {}", err.message),
        }];
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(c) = self.convention {
            out.push_str(&format!("convention: {c}\n"));
        }
        for line in &self.text {
            out.push_str(line);
            out.push('\n');
        }
        if let Some(t) = &self.timing {
            out.push_str(&format!("elapsed: {} ms\n", t["elapsed_ms"]));
        }
        out
    }
}

#[derive(Debug)]
pub struct CliError {
    pub status: Status,
    pub message: String,
}

impl CliError {
    pub fn invalid(message: impl Into<String>) -> Self {
        CliError {
            status: Status::Invalid,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Undecided(_) => Status::Undecided,
            _ => Status::Invalid,
        };
        CliError {
            status,
            message: e.to_string(),
        }
    }
}

pub fn value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("value serializes")
}

pub fn group_json(g: &FgAbelianGroup) -> Value {
    let parts = value(g);
    json!({
        "text": g.to_string(),
        "free_rank": parts["free_rank"],
        "torsion": parts["torsion"],
    })
}

/// Canonical coordinates: free coordinates, then torsion coordinates.
pub fn element_json(x: &GroupElement) -> Value {
    let parts = value(x);
    let mut coords = parts["free"].as_array().cloned().unwrap_or_default();
    coords.extend(parts["torsion"].as_array().cloned().unwrap_or_default());
    json!({ "text": x.to_string(), "coords": coords })
}
