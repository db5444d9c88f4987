use std::fmt::Display;

/// Output lines in a fixed order, plus whether any property failed.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<String>,
    failed: bool,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self, s: impl Into<String>) {
        self.lines.push(s.into());
    }

    /// `PROP name PASS|FAIL witness`.
    pub fn prop(&mut self, name: &str, pass: bool, witness: impl Display) {
        self.failed |= !pass;
        let verdict = if pass { "PASS" } else { "FAIL" };
        let witness = witness.to_string();
        if witness.is_empty() {
            self.lines.push(format!("PROP {name} {verdict}"));
        } else {
            self.lines.push(format!("PROP {name} {verdict} {witness}"));
        }
    }

    pub fn failed(&self) -> bool {
        self.failed
    }

    pub fn render(&self) -> String {
        let mut s = self.lines.join("\n");
        if !s.is_empty() {
            s.push('\n');
        }
        s
    }
}
