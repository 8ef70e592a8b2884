//! Run provenance embedded in every output file.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use girth_qaoa::ENGINE_VERSION;

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub subcommand: String,
    /// Resolved configuration after defaults, config file and flags.
    pub config: BTreeMap<String, String>,
    /// Subcommand arguments that are not configuration keys.
    pub arguments: BTreeMap<String, String>,
    pub seed: u64,
    pub engine_version: String,
    pub started_unix_ms: u128,
    pub finished_unix_ms: u128,
    pub outputs: Vec<String>,
    /// SHA-256 over the deterministic fields (everything except timestamps).
    pub hash: String,
}

fn now_ms() -> u128 {
    SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map_or(0, |d| d.as_millis())
}

impl RunManifest {
    pub fn start(
        subcommand: &str,
        config: BTreeMap<String, String>,
        arguments: BTreeMap<String, String>,
        seed: u64,
        outputs: Vec<PathBuf>,
    ) -> Self {
        let mut m = RunManifest {
            subcommand: subcommand.to_string(),
            config,
            arguments,
            seed,
            engine_version: ENGINE_VERSION.to_string(),
            started_unix_ms: now_ms(),
            finished_unix_ms: 0,
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
            hash: String::new(),
        };
        m.hash = m.compute_hash();
        m
    }

    pub fn compute_hash(&self) -> String {
        let canonical = json!({
            "subcommand": self.subcommand,
            "config": self.config,
            "arguments": self.arguments,
            "seed": self.seed,
            "engine_version": self.engine_version,
            "outputs": self.outputs,
        });
        let digest = Sha256::digest(canonical.to_string().as_bytes());
        let hex: String = digest.iter().map(|b| format!("{b:02x}")).collect();
        format!("sha256:{hex}")
    }

    pub fn finish(&mut self) {
        self.finished_unix_ms = now_ms();
    }

    /// `value` with this manifest attached under the `manifest` key.
    pub fn attach(&self, mut value: Value) -> Value {
        if let Value::Object(map) = &mut value {
            map.insert("manifest".into(), serde_json::to_value(self).expect("manifest serializes"));
        }
        value
    }

    pub fn csv_comment(&self) -> String {
        format!("# manifest {}\n", self.hash)
    }

    /// Sidecar path holding the full manifest of an output file.
    pub fn sidecar_path(output: &Path) -> PathBuf {
        let mut name = output.as_os_str().to_owned();
        name.push(".manifest.json");
        PathBuf::from(name)
    }

    pub fn write_sidecar(&self, output: &Path) -> Result<(), CliError> {
        let text = serde_json::to_string_pretty(self)?;
        fs::write(Self::sidecar_path(output), text + "\n")?;
        Ok(())
    }
}
