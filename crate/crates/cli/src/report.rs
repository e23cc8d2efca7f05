//! Report envelope written next to the exported files. Serialization is
//! byte-stable: object keys are sorted, floats print in shortest
//! round-trip form, and nothing time-dependent is included (wall-clock
//! timings go to stderr).

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub config_sha256: String,
    pub version: String,
    pub seed: u64,
    pub results: serde_json::Value,
}

impl Report {
    pub fn new(command: &str, config_bytes: &[u8], seed: u64, results: serde_json::Value) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(config_bytes);
        Report {
            command: command.to_string(),
            config_sha256: format!("{:x}", hasher.finalize()),
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed,
            results,
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut bytes = serde_json::to_vec_pretty(self).expect("reports are valid JSON");
        bytes.push(b'\n');
        bytes
    }
}
