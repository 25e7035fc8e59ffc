//! Run records: the command, its canonical inputs and its result rows, kept
//! as flat JSON files for regression comparisons.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunRecord {
    pub command: String,
    pub inputs: String,
    pub outputs: serde_json::Value,
    pub engine_version: String,
    /// ISO-8601, UTC.
    pub timestamp: String,
}

impl RunRecord {
    pub fn new(command: &str, inputs: String, outputs: serde_json::Value) -> Self {
        RunRecord {
            command: command.to_string(),
            inputs,
            outputs,
            engine_version: ENGINE_VERSION.to_string(),
            timestamp: chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true),
        }
    }

    /// `<command>-<first 16 hex digits of sha256(inputs)>.json`, so re-runs
    /// with the same inputs replace their earlier record.
    pub fn file_name(&self) -> String {
        let digest = Sha256::digest(self.inputs.as_bytes());
        format!("{}-{}.json", self.command, &hex::encode(digest)[..16])
    }

    pub fn write_to(&self, dir: &Path) -> io::Result<PathBuf> {
        fs::create_dir_all(dir)?;
        let path = dir.join(self.file_name());
        let mut text = serde_json::to_string_pretty(self).map_err(io::Error::other)?;
        text.push('\n');
        fs::write(&path, text)?;
        Ok(path)
    }

    pub fn read_from(path: &Path) -> io::Result<Self> {
        let text = fs::read_to_string(path)?;
        serde_json::from_str(&text).map_err(io::Error::other)
    }
}
