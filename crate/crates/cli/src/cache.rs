//! Content-addressed result cache. Entries are keyed by a hash of the
//! operation, its canonical input and the code version; each entry carries a
//! digest of its payload so that damaged files are recomputed.

use std::fs;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Bump when the meaning of cached payloads changes.
const SCHEMA: &str = "1";

#[derive(Serialize, Deserialize)]
struct Entry {
    key: String,
    digest: String,
    exit: u8,
    payload: Value,
}

pub struct Cache {
    dir: Option<PathBuf>,
}

fn sha(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    pub fn key(op: &str, input: &Value) -> String {
        // serde_json::Value keeps object keys sorted, so this is canonical
        let tag = format!("{}|{}|{}", env!("CARGO_PKG_VERSION"), SCHEMA, op);
        sha(&format!("{tag}\n{input}"))
    }

    fn path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    pub fn get(&self, key: &str) -> Option<(Value, u8)> {
        let text = fs::read_to_string(self.path(key)?).ok()?;
        let e: Entry = serde_json::from_str(&text).ok()?;
        (e.key == key && e.digest == sha(&e.payload.to_string())).then_some((e.payload, e.exit))
    }

    pub fn put(&self, key: &str, payload: &Value, exit: u8) {
        let Some(path) = self.path(key) else { return };
        let e = Entry { key: key.to_string(), digest: sha(&payload.to_string()), exit, payload: payload.clone() };
        if let Some(dir) = path.parent() {
            let _ = fs::create_dir_all(dir);
        }
        // write then rename so a crash never leaves a half-written entry
        let tmp = path.with_extension("tmp");
        if fs::write(&tmp, serde_json::to_string(&e).unwrap_or_default()).is_ok() {
            let _ = fs::rename(&tmp, &path);
        }
    }

    /// Cached value for (op, input), computing and storing it on a miss.
    pub fn run<F>(&self, op: &str, input: &Value, f: F) -> Result<(Value, u8), (String, u8)>
    where
        F: FnOnce() -> Result<(Value, u8), (String, u8)>,
    {
        let key = Self::key(op, input);
        if let Some(hit) = self.get(&key) {
            return Ok(hit);
        }
        let (v, code) = f()?;
        self.put(&key, &v, code);
        Ok((v, code))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn corrupt_entries_are_recomputed() {
        let dir = std::env::temp_dir().join(format!("twoplus-cache-test-{}", std::process::id()));
        let c = Cache::new(Some(dir.clone()));
        let input = json!({"n": 1});
        let (v, _) = c.run("op", &input, || Ok((json!([1, 2]), 0))).unwrap();
        assert_eq!(v, json!([1, 2]));
        // a hit does not call the closure
        let (v, _) = c.run("op", &input, || Err(("miss".into(), 9))).unwrap();
        assert_eq!(v, json!([1, 2]));
        let key = Cache::key("op", &input);
        let path = dir.join(format!("{key}.json"));
        let text = fs::read_to_string(&path).unwrap().replace("[1,2]", "[1,3]");
        fs::write(&path, text).unwrap();
        assert!(c.get(&key).is_none());
        let (v, _) = c.run("op", &input, || Ok((json!([1, 2]), 0))).unwrap();
        assert_eq!(v, json!([1, 2]));
        let _ = fs::remove_dir_all(dir);
    }

    #[test]
    fn keys_depend_on_op_and_input() {
        let a = Cache::key("x", &json!({"a": 1}));
        assert_ne!(a, Cache::key("y", &json!({"a": 1})));
        assert_ne!(a, Cache::key("x", &json!({"a": 2})));
        assert_eq!(a, Cache::key("x", &json!({"a": 1})));
    }
}
