//! Command implementations behind the `bpba` binary.

pub mod bench;
pub mod compute;
pub mod report;

use std::path::Path;

use anyhow::Context;
use bpba_core::LatticeSpec;
use sha2::{Digest, Sha256};

pub use report::{ConfigRow, RunReport};

pub fn read_spec(path: &Path) -> anyhow::Result<LatticeSpec> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    LatticeSpec::from_json(&text).with_context(|| format!("malformed spec file {}", path.display()))
}

/// SHA-256 of the canonical JSON form of the spec.
pub fn spec_digest(spec: &LatticeSpec) -> String {
    hex::encode(Sha256::digest(spec.to_json().as_bytes()))
}
