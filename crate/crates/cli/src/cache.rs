//! Content-addressed result cache: JSON payloads keyed by a stable hash of
//! the canonical query (output format excluded). Writes are atomic; corrupt
//! entries are recomputed with a warning.

use std::fs;
use std::path::{Path, PathBuf};

use serde_json::Value;
use sha2::{Digest, Sha256};

pub struct Cache {
    dir: PathBuf,
}

impl Cache {
    pub fn new(dir: &Path) -> std::io::Result<Cache> {
        fs::create_dir_all(dir)?;
        Ok(Cache { dir: dir.to_path_buf() })
    }

    /// Stable key of a canonical query value.
    pub fn key(query: &Value) -> String {
        let canonical = canonical_json(query);
        let mut h = Sha256::new();
        h.update(canonical.as_bytes());
        hex::encode(h.finalize())
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.json"))
    }

    pub fn lookup(&self, query: &Value) -> Option<Value> {
        let path = self.path(&Self::key(query));
        let bytes = fs::read(&path).ok()?;
        match serde_json::from_slice::<Value>(&bytes) {
            Ok(v) => Some(v),
            Err(_) => {
                eprintln!(
                    "warning: corrupt cache entry {}; recomputing",
                    path.display()
                );
                None
            }
        }
    }

    pub fn store(&self, query: &Value, payload: &Value) -> std::io::Result<()> {
        let key = Self::key(query);
        let final_path = self.path(&key);
        let tmp = self.dir.join(format!(".{key}.tmp"));
        fs::write(&tmp, serde_json::to_vec_pretty(payload)?)?;
        fs::rename(&tmp, &final_path)
    }
}

/// Deterministic JSON serialization: objects with sorted keys.
pub fn canonical_json(v: &Value) -> String {
    match v {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let inner: Vec<String> = keys
                .into_iter()
                .map(|k| format!("{}:{}", serde_json::to_string(k).unwrap(), canonical_json(&map[k])))
                .collect();
            format!("{{{}}}", inner.join(","))
        }
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(canonical_json).collect();
            format!("[{}]", inner.join(","))
        }
        other => serde_json::to_string(other).unwrap(),
    }
}
