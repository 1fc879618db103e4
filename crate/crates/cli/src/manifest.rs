use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{Context, Result};
use serde::Serialize;
use serde_json::Value;

/// What a run did, enough to repeat it. Outputs are byte-identical across
/// repeats; only `wall_time_ms` changes.
#[derive(Debug, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub tool_version: String,
    pub inputs: Vec<PathBuf>,
    pub outputs: Vec<PathBuf>,
    pub wall_time_ms: u128,
    pub result_counts: BTreeMap<String, u64>,
    #[serde(skip)]
    started: Option<Instant>,
}

impl RunManifest {
    pub fn start(command: &str) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            inputs: Vec::new(),
            outputs: Vec::new(),
            wall_time_ms: 0,
            result_counts: BTreeMap::new(),
            started: Some(Instant::now()),
        }
    }

    pub fn param(&mut self, key: &str, value: impl Serialize) {
        self.parameters.insert(key.to_string(), serde_json::to_value(value).expect("parameters serialize"));
    }

    pub fn count(&mut self, key: &str, n: usize) {
        self.result_counts.insert(key.to_string(), n as u64);
    }

    pub fn input(&mut self, p: &Path) {
        self.inputs.push(p.to_path_buf());
    }

    pub fn output(&mut self, p: &Path) {
        self.outputs.push(p.to_path_buf());
    }

    /// Writes to `path`, or to standard error when `path` is `None`.
    pub fn finish(mut self, path: Option<&Path>) -> Result<()> {
        if let Some(t) = self.started {
            self.wall_time_ms = t.elapsed().as_millis();
        }
        match path {
            Some(p) => {
                let text = serde_json::to_string_pretty(&self)? + "\n";
                std::fs::write(p, text).with_context(|| format!("writing manifest {}", p.display()))
            }
            None => {
                eprintln!("manifest: {}", serde_json::to_string(&self)?);
                Ok(())
            }
        }
    }
}
