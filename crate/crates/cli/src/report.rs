use serde::Serialize;
use serde_json::Value;

/// Outcome of one subcommand; `timing_ms` is the only field that varies between identical runs.
#[derive(Debug, Serialize)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Value,
    pub passed: bool,
    pub results: Value,
    pub warnings: Vec<String>,
    pub timing_ms: f64,
    #[serde(skip)]
    pub text: String,
}

impl Report {
    pub fn new(command: &'static str, inputs: Value) -> Self {
        Report { command, inputs, passed: true, results: Value::Null, warnings: Vec::new(), timing_ms: 0.0, text: String::new() }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("serializable") + "\n",
            Format::Ascii => {
                let mut out = self.text.clone();
                for w in &self.warnings {
                    out.push_str(&format!("warning: {w}\n"));
                }
                out.push_str(if self.passed { "result: pass\n" } else { "result: FAIL\n" });
                out
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    Json,
    Ascii,
}

/// Failures that stop a command before it produces a report.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable inputs or preconditions; exit code 2.
    Usage(String),
    /// A computation that could not be carried out; exit code 1.
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => m,
        }
    }
}

impl From<samelson::Error> for CliError {
    fn from(e: samelson::Error) -> Self {
        use samelson::Error::*;
        match e {
            Parse(_) | UnknownModel(_) | InvalidModel(_) | DegenerateParameter | Bidegree(_) | MismatchedN(..) | Io(_)
            | Json(_) | Structure(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failed(e.to_string()),
        }
    }
}
