use serde::Serialize;
use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
}

/// Outcome of one command: a machine payload and the lines shown to humans.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub payload: Value,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &str, ok: bool, payload: Value, lines: Vec<String>) -> Self {
        Report { command: command.into(), status: if ok { Status::Ok } else { Status::Fail }, payload, lines }
    }

    pub fn failure(command: &str, err: &anyhow::Error) -> Self {
        let msg = format!("{err:#}");
        Report::new(command, false, json!({ "error": msg }), vec![format!("error: {msg}")])
    }

    pub fn is_ok(&self) -> bool {
        self.status == Status::Ok
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let v = json!({ "command": self.command, "status": self.status, "payload": self.payload });
            return serde_json::to_string_pretty(&v).expect("reports serialize");
        }
        let mut out = self.lines.join("\n");
        if !out.is_empty() {
            out.push('\n');
        }
        out.push_str(match self.status {
            Status::Ok => "status: ok",
            Status::Fail => "status: fail",
        });
        out
    }
}
