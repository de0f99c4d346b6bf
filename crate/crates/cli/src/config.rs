//! Resolved command configurations: defaults, then flags, then `--config` JSON.

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::path::Path;

/// Recursively overlays `top` on `base`; objects merge key by key, anything else replaces.
pub fn merge(base: &mut Value, top: Value) {
    match (base, top) {
        (Value::Object(b), Value::Object(t)) => {
            for (k, v) in t {
                match b.get_mut(&k) {
                    Some(slot) => merge(slot, v),
                    None => {
                        b.insert(k, v);
                    }
                }
            }
        }
        (slot, v) => *slot = v,
    }
}

/// Applies the JSON file at `path`, if any, on top of `cfg`.
pub fn overlay<C: Serialize + DeserializeOwned>(cfg: C, path: Option<&Path>) -> Result<C> {
    let Some(path) = path else { return Ok(cfg) };
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading config {}", path.display()))?;
    let top: Value = serde_json::from_str(&text)
        .with_context(|| format!("parsing config {}", path.display()))?;
    let mut base = serde_json::to_value(cfg)?;
    merge(&mut base, top);
    serde_json::from_value(base).with_context(|| format!("applying config {}", path.display()))
}

/// Hex SHA-256 of the compact JSON form of the resolved configuration.
pub fn config_hash<C: Serialize>(cfg: &C) -> Result<String> {
    let bytes = serde_json::to_vec(cfg)?;
    Ok(hex::encode(Sha256::digest(&bytes)))
}
