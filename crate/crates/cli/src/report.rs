use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;

use crate::error::{CliError, CliResult};

/// Everything needed to reproduce a run, echoed into its report.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    /// Flag name to the builtin name or path given.
    pub inputs: BTreeMap<String, String>,
    pub parameters: BTreeMap<String, Value>,
    pub tol: f64,
    pub seed: Option<u64>,
    pub output: Option<String>,
    pub version: &'static str,
}

impl RunManifest {
    pub fn new(command: &str, tol: f64, output: Option<&str>) -> Self {
        Self {
            command: command.to_string(),
            inputs: BTreeMap::new(),
            parameters: BTreeMap::new(),
            tol,
            seed: None,
            output: output.map(str::to_string),
            version: env!("CARGO_PKG_VERSION"),
        }
    }

    pub fn input(mut self, flag: &str, value: Option<&str>) -> Self {
        if let Some(v) = value {
            self.inputs.insert(flag.to_string(), v.to_string());
        }
        self
    }

    pub fn parameter(mut self, name: &str, value: impl Serialize) -> Self {
        self.parameters.insert(name.to_string(), serde_json::to_value(value).expect("serializable parameter"));
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// `{"manifest": ..., "report": ...}` with sorted keys, to `--out` or stdout.
pub fn emit(manifest: &RunManifest, report: &impl Serialize) -> CliResult<()> {
    let doc = serde_json::json!({ "manifest": manifest, "report": report });
    let mut text = serde_json::to_string_pretty(&sort_keys(doc)).expect("JSON values serialize");
    text.push('\n');
    match &manifest.output {
        Some(path) => write_file(Path::new(path), &text),
        None => {
            std::io::stdout()
                .write_all(text.as_bytes())
                .map_err(|source| CliError::Io { path: "<stdout>".into(), source })
        }
    }
}

pub fn write_file(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn sort_keys(v: Value) -> Value {
    match v {
        Value::Object(map) => {
            let sorted: BTreeMap<String, Value> = map.into_iter().map(|(k, v)| (k, sort_keys(v))).collect();
            Value::Object(sorted.into_iter().collect())
        }
        Value::Array(items) => Value::Array(items.into_iter().map(sort_keys).collect()),
        other => other,
    }
}
