use serde::Serialize;
use serde_json::Value;

use markedgroups::engine::Outcome;

/// Result of a run, mapped onto the exit status.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Accepted,
    Yes,
    No,
    Exhausted,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Accepted | Verdict::Yes => 0,
            Verdict::No => 1,
            Verdict::Exhausted => 2,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Value,
    pub budget: Option<u64>,
    pub outcome: Verdict,
    pub steps_used: u64,
    pub certificate: Value,
    /// One-line human summary, printed in text mode.
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    pub fn new(command: &str, inputs: Value, budget: Option<u64>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            budget,
            outcome: Verdict::Exhausted,
            steps_used: 0,
            certificate: Value::Null,
            summary: String::new(),
        }
    }

    /// Fills outcome and steps from a semi-decision.
    pub fn semi<O>(mut self, outcome: &Outcome<O>, certificate: impl FnOnce(&O) -> Value) -> Self {
        self.steps_used = outcome.steps();
        if let Some(v) = outcome.value() {
            self.outcome = Verdict::Accepted;
            self.certificate = certificate(v);
        }
        self
    }

    /// Fills outcome and steps from a decision.
    pub fn decided(mut self, outcome: &Outcome<bool>) -> Self {
        self.steps_used = outcome.steps();
        self.outcome = match outcome.value() {
            Some(true) => Verdict::Yes,
            Some(false) => Verdict::No,
            None => Verdict::Exhausted,
        };
        self
    }

    pub fn summary(mut self, text: impl Into<String>) -> Self {
        self.summary = text.into();
        self
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("{}: {}", self.command, verdict_word(self.outcome));
        out.push_str(&format!(" ({} steps", self.steps_used));
        if let Some(b) = self.budget {
            out.push_str(&format!(" of {b}"));
        }
        out.push(')');
        if !self.summary.is_empty() {
            out.push('\n');
            out.push_str(&self.summary);
        }
        out
    }
}

fn verdict_word(v: Verdict) -> &'static str {
    match v {
        Verdict::Accepted => "accepted",
        Verdict::Yes => "yes",
        Verdict::No => "no",
        Verdict::Exhausted => "exhausted",
    }
}
