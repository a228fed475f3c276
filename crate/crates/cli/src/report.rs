//! Text and JSON rendering. Both forms carry the full run config so a
//! report can be replayed.

use serde::Serialize;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

pub struct Report {
    pub command: &'static str,
    pub config: Value,
    pub result: Value,
    pub lines: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, config: impl Serialize) -> Self {
        Report {
            command,
            config: serde_json::to_value(config).expect("config serializes"),
            result: Value::Null,
            lines: Vec::new(),
        }
    }

    pub fn result(mut self, result: impl Serialize) -> Self {
        self.result = serde_json::to_value(result).expect("result serializes");
        self
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    pub fn render(&self, as_json: bool) -> String {
        if as_json {
            let doc = json!({
                "schema": SCHEMA,
                "version": env!("CARGO_PKG_VERSION"),
                "command": self.command,
                "config": self.config,
                "result": self.result,
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
            s.push('\n');
            return s;
        }
        let mut s = format!(
            "# config version={} command={} {}\n",
            env!("CARGO_PKG_VERSION"),
            self.command,
            serde_json::to_string(&self.config).expect("config serializes")
        );
        for l in &self.lines {
            s.push_str(l);
            s.push('\n');
        }
        s
    }
}
