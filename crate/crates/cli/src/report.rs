use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: u32 = 1;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_UNKNOWN: i32 = 2;
pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INPUT: i32 = 4;

/// The outcome of one command, printable as text or JSON.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub status: String,
    pub exit: i32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub depth: Option<usize>,
    pub exact: bool,
    pub data: Value,
    #[serde(skip)]
    pub text: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, status: impl Into<String>, exit: i32) -> Self {
        Report {
            schema: SCHEMA,
            command: command.into(),
            status: status.into(),
            exit,
            bound: None,
            depth: None,
            exact: true,
            data: Value::Null,
            text: Vec::new(),
        }
    }

    pub fn bound(mut self, l: usize) -> Self {
        self.bound = Some(l);
        self
    }

    pub fn depth(mut self, d: usize) -> Self {
        self.depth = Some(d);
        self
    }

    pub fn exact(mut self, yes: bool) -> Self {
        self.exact = yes;
        self
    }

    pub fn data(mut self, v: impl Serialize) -> Self {
        self.data = serde_json::to_value(v).expect("report data serialises");
        self
    }

    pub fn line(mut self, s: impl Into<String>) -> Self {
        self.text.push(s.into());
        self
    }

    pub fn lines(mut self, ls: impl IntoIterator<Item = String>) -> Self {
        self.text.extend(ls);
        self
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            return serde_json::to_string_pretty(self).expect("report serialises") + "\n";
        }
        let mut head = format!("{}: {}", self.command, self.status);
        if let Some(l) = self.bound {
            head += &format!(" (bound {l})");
        }
        if let Some(d) = self.depth {
            head += &format!(" (depth {d})");
        }
        if !self.exact {
            head += " [truncated]";
        }
        let mut out = head + "\n";
        for l in &self.text {
            out += l;
            out.push('\n');
        }
        out
    }
}
