use std::fmt;
use std::time::Duration;

use dv_core::{DistanceProfile, DvError, Regime, Solution};
use serde::Serialize;
use serde_json::Value;

/// Exit status of a finished command.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Yes,
    No,
}

impl Verdict {
    pub fn code(self) -> u8 {
        match self {
            Verdict::Yes => 0,
            Verdict::No => 1,
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(DvError),
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            CliError::Core(e) => e.to_string(),
            CliError::Usage(m) => m.clone(),
        };
        f.write_str(&text.split_whitespace().collect::<Vec<_>>().join(" "))
    }
}

impl From<DvError> for CliError {
    fn from(e: DvError) -> Self {
        CliError::Core(e)
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Core(DvError::from(e))
    }
}

pub fn usage(message: impl Into<String>) -> CliError {
    CliError::Usage(message.into())
}

/// What a command produced: the verdict, the text for standard output and
/// the fields of the JSON document.
pub struct Report {
    pub verdict: Verdict,
    pub result: &'static str,
    pub text: String,
    pub solution: Option<Solution>,
    pub profile: Option<DistanceProfile>,
    pub regime: Option<Regime>,
    pub details: Value,
}

impl Report {
    pub fn new(verdict: Verdict, result: &'static str, text: impl Into<String>) -> Report {
        Report {
            verdict,
            result,
            text: text.into(),
            solution: None,
            profile: None,
            regime: None,
            details: Value::Null,
        }
    }
}

#[derive(Serialize)]
pub struct Timings {
    pub load_ms: f64,
    pub run_ms: f64,
    pub total_ms: f64,
}

pub fn millis(d: Duration) -> f64 {
    (d.as_secs_f64() * 1e6).round() / 1e3
}

#[derive(Serialize)]
pub struct Document<'a> {
    pub command: &'a str,
    pub input_digest: Option<&'a str>,
    pub result: &'a str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub solution: Option<&'a [usize]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profile: Option<DistanceProfile>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub regime: Option<&'a Regime>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub details: &'a Value,
    pub timings: Timings,
}
