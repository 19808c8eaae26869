//! Content-addressed result cache. Enabled by setting `BETAFIN_CACHE_DIR`.

use serde::de::DeserializeOwned;
use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use std::fs;
use std::path::PathBuf;

pub const CACHE_ENV: &str = "BETAFIN_CACHE_DIR";

pub fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

/// Hex SHA-256 of the canonical JSON of `key`.
pub fn key_hash(key: &Value) -> String {
    let bytes = serde_json::to_vec(key).expect("json value serializes");
    hex::encode(Sha256::digest(&bytes))
}

/// Returns the cached value for `key`, or computes and stores it. Unreadable
/// or stale entries are recomputed.
pub fn cached<T, F>(key: &Value, compute: F) -> T
where
    T: Serialize + DeserializeOwned,
    F: FnOnce() -> T,
{
    let Some(dir) = cache_dir() else { return compute() };
    let path = dir.join(format!("{}.json", key_hash(key)));
    if let Some(v) = fs::read(&path).ok().and_then(|b| serde_json::from_slice::<Entry<T>>(&b).ok()) {
        if v.key == *key {
            return v.value;
        }
    }
    let value = compute();
    let entry = Entry { key: key.clone(), value };
    if fs::create_dir_all(&dir).is_ok() {
        if let Ok(bytes) = serde_json::to_vec(&entry) {
            let tmp = path.with_extension("tmp");
            if fs::write(&tmp, bytes).is_ok() {
                let _ = fs::rename(&tmp, &path);
            }
        }
    }
    entry.value
}

#[derive(serde::Serialize, serde::Deserialize)]
struct Entry<T> {
    key: Value,
    value: T,
}
