use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

use esnlab::Error;

/// Bad input or usage; exit code 2.
#[derive(Debug)]
pub struct InputError(pub String);

impl From<Error> for InputError {
    fn from(e: Error) -> Self {
        InputError(e.to_string())
    }
}

pub type CliResult<T> = Result<T, InputError>;

/// Splits library errors into input errors and failed mathematical checks.
pub fn failure(e: Error) -> CliResult<String> {
    match e {
        Error::Parse(_) | Error::Document(_) | Error::OrderMismatch(..) | Error::OrderTooLarge { .. } => {
            Err(InputError(e.to_string()))
        }
        other => Ok(other.to_string()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Input {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Timing {
    pub elapsed_ms: u128,
}

/// Output of a command before rendering.
#[derive(Debug, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub inputs: Vec<Input>,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub result: Value,
    pub timing: Option<Timing>,
    /// Produced structure, written to `--out` or shown with the report.
    #[serde(skip)]
    pub artifact: Option<Artifact>,
    /// Graphviz rendering for `--format dot`.
    #[serde(skip)]
    pub dot: Option<String>,
    /// Extra human-readable lines for text output.
    #[serde(skip)]
    pub notes: Vec<String>,
}

#[derive(Debug)]
pub enum Artifact {
    Json(String),
    Text(String),
}

impl Artifact {
    pub fn text(&self) -> &str {
        match self {
            Artifact::Json(s) | Artifact::Text(s) => s,
        }
    }
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            schema_version: esnlab::SCHEMA_VERSION,
            command: command.to_string(),
            inputs: Vec::new(),
            checks: Vec::new(),
            result: Value::Null,
            timing: None,
            artifact: None,
            dot: None,
            notes: Vec::new(),
        }
    }

    pub fn check(&mut self, name: &str, passed: bool, witness: impl FnOnce() -> String) -> bool {
        let witness = (!passed).then(witness);
        self.checks.push(Check { name: name.to_string(), passed, witness });
        passed
    }

    pub fn fail(&mut self, name: &str, witness: String) {
        self.checks.push(Check { name: name.to_string(), passed: false, witness: Some(witness) });
    }

    pub fn pass(&mut self, name: &str) {
        self.check(name, true, String::new);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    /// Reads a file and records its path and digest.
    pub fn read(&mut self, path: &Path) -> CliResult<String> {
        let bytes = std::fs::read(path).map_err(|e| InputError(format!("{}: {e}", path.display())))?;
        self.inputs.push(Input { path: path.display().to_string(), sha256: hex::encode(Sha256::digest(&bytes)) });
        String::from_utf8(bytes).map_err(|_| InputError(format!("{}: not UTF-8", path.display())))
    }

    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn render_text(&self, with_artifact: bool) -> String {
        let mut out = format!("esnlab {}\n", self.command);
        for i in &self.inputs {
            let _ = writeln!(out, "input {} sha256:{}", i.path, i.sha256);
        }
        for c in &self.checks {
            match &c.witness {
                None => {
                    let _ = writeln!(out, "PASS {}", c.name);
                }
                Some(w) => {
                    let _ = writeln!(out, "FAIL {}: {w}", c.name);
                }
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        if with_artifact {
            if let Some(a) = &self.artifact {
                out.push_str(a.text());
                if !a.text().ends_with('\n') {
                    out.push('\n');
                }
            }
        }
        if let Some(t) = &self.timing {
            let _ = writeln!(out, "elapsed {} ms", t.elapsed_ms);
        }
        out
    }
}

/// Starts a wall clock for the `timing` field.
pub struct Clock(Instant);

impl Clock {
    pub fn start() -> Self {
        Clock(Instant::now())
    }

    pub fn stamp(&self, r: &mut Report) {
        r.timing = Some(Timing { elapsed_ms: self.0.elapsed().as_millis() });
    }
}

pub fn fixture_dir(flag: Option<PathBuf>) -> PathBuf {
    flag.or_else(|| std::env::var_os("ESNLAB_FIXTURES").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures")))
}
