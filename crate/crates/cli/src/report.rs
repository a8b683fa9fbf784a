use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Process exit status. Errors exit with 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Answer {
    Yes = 0,
    No = 1,
    Inconclusive = 2,
}

pub const EXIT_ERROR: i32 = 3;

/// What a command prints: one report per run, deterministic unless timing
/// is requested.
#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub verdict: String,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub details: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<BudgetStatus>,
    /// Paths of artifacts written to disk.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub artifacts: Vec<PathBuf>,
    /// Artifact text printed with the report when no output path was given.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub artifact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
    #[serde(skip)]
    pub answer: Option<Answer>,
}

#[derive(Debug, Serialize)]
pub struct BudgetStatus {
    pub limit: usize,
    pub unit: &'static str,
    pub exhausted: bool,
}

impl RunReport {
    pub fn new(command: &str) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            verdict: String::new(),
            details: BTreeMap::new(),
            budget: None,
            artifacts: Vec::new(),
            artifact: None,
            elapsed_ms: None,
            answer: None,
        }
    }

    pub fn input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn detail(&mut self, key: &str, value: impl Into<Value>) {
        self.details.insert(key.to_string(), value.into());
    }

    pub fn verdict(&mut self, verdict: &str, answer: Answer) {
        self.verdict = verdict.to_string();
        self.answer = Some(answer);
    }

    pub fn budget(&mut self, limit: usize, unit: &'static str, exhausted: bool) {
        self.budget = Some(BudgetStatus { limit, unit, exhausted });
    }

    /// Write `text` to `path` if given, otherwise keep it for printing.
    pub fn emit(&mut self, path: Option<&Path>, text: String) -> anyhow::Result<()> {
        match path {
            Some(p) => {
                fs::write(p, text).with_context(|| format!("writing {}", p.display()))?;
                self.artifacts.push(p.to_path_buf());
            }
            None => self.artifact = Some(text),
        }
        Ok(())
    }

    pub fn finish(mut self, started: Option<Instant>, format: Format) -> anyhow::Result<i32> {
        self.elapsed_ms = started.map(|s| s.elapsed().as_millis());
        match format {
            Format::Json => println!("{}", serde_json::to_string_pretty(&self)?),
            Format::Text => print!("{}", self.render_text()),
        }
        Ok(self.answer.map_or(EXIT_ERROR, |a| a as i32))
    }

    fn render_text(&self) -> String {
        let mut out = format!("{}: {}\n", self.command, self.verdict);
        for (k, v) in &self.inputs {
            out += &format!("  {k}: {v}\n");
        }
        for (k, v) in &self.details {
            let v = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out += &format!("  {k}: {v}\n");
        }
        if let Some(b) = &self.budget {
            let state = if b.exhausted { "exhausted" } else { "ok" };
            out += &format!("  budget: {} {} ({state})\n", b.limit, b.unit);
        }
        for p in &self.artifacts {
            out += &format!("  wrote: {}\n", p.display());
        }
        if let Some(ms) = self.elapsed_ms {
            out += &format!("  elapsed: {ms} ms\n");
        }
        if let Some(a) = &self.artifact {
            out += "\n";
            out += a;
            if !a.ends_with('\n') {
                out += "\n";
            }
        }
        out
    }
}
