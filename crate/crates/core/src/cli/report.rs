use serde_json::{Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    /// A fuel or size bound ran out before an answer.
    Partial,
    /// Usage or parse errors.
    Error,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Ok => "OK",
            Status::Fail => "FAIL",
            Status::Partial => "PARTIAL",
            Status::Error => "ERROR",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Error => 2,
            Status::Partial => 3,
        }
    }
}

/// Human lines plus the same content as key/value data for `--json`.
#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub lines: Vec<String>,
    pub data: Map<String, Value>,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Report {
        Report { command: command.into(), status: Status::Ok, lines: Vec::new(), data: Map::new() }
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn set(&mut self, key: &str, v: impl Into<Value>) {
        self.data.insert(key.to_string(), v.into());
    }

    pub fn error(command: impl Into<String>, status: Status, msg: impl Into<String>) -> Report {
        let msg = msg.into();
        let mut r = Report::new(command);
        r.status = status;
        r.line(format!("error: {msg}"));
        r.set("error", msg);
        r
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }
}

pub fn format_report(r: &Report, machine: bool) -> String {
    if machine {
        let mut m = Map::new();
        m.insert("command".into(), Value::String(r.command.clone()));
        m.insert("status".into(), Value::String(r.status.as_str().into()));
        for (k, v) in &r.data {
            m.insert(k.clone(), v.clone());
        }
        let mut s = serde_json::to_string_pretty(&Value::Object(m)).expect("json values serialize");
        s.push('\n');
        s
    } else if r.lines.is_empty() {
        format!("{}\n", r.status.as_str())
    } else {
        let mut s = r.lines.join("\n");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report() {
        let r = Report::new("check");
        assert_eq!(format_report(&r, false), "OK\n");
        let v: Value = serde_json::from_str(&format_report(&r, true)).unwrap();
        assert_eq!(v, serde_json::json!({"command": "check", "status": "OK"}));
    }

    #[test]
    fn keys_keep_insertion_order() {
        let mut r = Report::new("homology");
        r.set("zeta", 1);
        r.set("alpha", 2);
        let s = format_report(&r, true);
        assert!(s.find("zeta").unwrap() < s.find("alpha").unwrap());
    }
}
