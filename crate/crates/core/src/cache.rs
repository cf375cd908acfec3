//! Append-only JSON-lines cache of command results.
//!
//! Each line is one [`ResultRecord`]. Lines that fail to parse (typically a
//! write cut short) are skipped with a warning, and records written by a
//! different artifact version are ignored on load.

use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::field::Field;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "FATPOINTS_CACHE";

/// Records from other versions are bypassed.
pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub request_hash: String,
    pub command: String,
    pub payload: Value,
    /// Seconds since the Unix epoch.
    pub created: u64,
    pub artifact_version: String,
}

/// SHA-256 over the canonical JSON of `(command, args, seed, field)`.
///
/// `serde_json` maps keep keys sorted, so argument order never matters.
pub fn request_hash(command: &str, args: &Value, seed: u64, field: Field) -> String {
    let canonical = serde_json::json!({
        "command": command,
        "args": args,
        "seed": seed,
        "field": field.to_string(),
    });
    let digest = Sha256::digest(canonical.to_string().as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Io { path: path.display().to_string(), msg: e.to_string() }
}

/// In-memory index over a cache file, plus the single append handle.
#[derive(Debug)]
pub struct Cache {
    path: PathBuf,
    version: String,
    entries: HashMap<String, ResultRecord>,
    writer: File,
    skipped: usize,
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        Self::open_with_version(path, ARTIFACT_VERSION)
    }

    pub fn open_with_version(path: impl AsRef<Path>, version: &str) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut entries = HashMap::new();
        let mut skipped = 0;
        if path.exists() {
            let reader = BufReader::new(File::open(&path).map_err(|e| io_err(&path, e))?);
            for (no, line) in reader.lines().enumerate() {
                let line = line.map_err(|e| io_err(&path, e))?;
                if line.trim().is_empty() {
                    continue;
                }
                match serde_json::from_str::<ResultRecord>(&line) {
                    Ok(rec) if rec.artifact_version == version => {
                        entries.insert(rec.request_hash.clone(), rec);
                    }
                    Ok(_) => skipped += 1,
                    Err(e) => {
                        log::warn!("{}:{}: ignoring unreadable cache line ({e})", path.display(), no + 1);
                        skipped += 1;
                    }
                }
            }
        }
        let mut writer = OpenOptions::new().create(true).append(true).open(&path).map_err(|e| io_err(&path, e))?;
        // A torn final line must not swallow the next record.
        if std::fs::metadata(&path).map(|m| m.len() > 0).unwrap_or(false) && !ends_with_newline(&path)? {
            writer.write_all(b"\n").map_err(|e| io_err(&path, e))?;
        }
        Ok(Self { path, version: version.to_string(), entries, writer, skipped })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines ignored on load: unreadable or from another version.
    pub fn skipped(&self) -> usize {
        self.skipped
    }

    pub fn lookup(&self, hash: &str) -> Option<&ResultRecord> {
        self.entries.get(hash)
    }

    /// Appends and flushes one record, replacing any in-memory entry.
    pub fn store(&mut self, hash: String, command: &str, payload: Value) -> Result<ResultRecord> {
        let created = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
        let rec = ResultRecord {
            request_hash: hash,
            command: command.to_string(),
            payload,
            created,
            artifact_version: self.version.clone(),
        };
        let line = serde_json::to_string(&rec).map_err(|e| io_err(&self.path, e))?;
        writeln!(self.writer, "{line}").and_then(|_| self.writer.flush()).map_err(|e| io_err(&self.path, e))?;
        self.entries.insert(rec.request_hash.clone(), rec.clone());
        Ok(rec)
    }
}

fn ends_with_newline(path: &Path) -> Result<bool> {
    use std::io::{Read, Seek, SeekFrom};
    let mut f = File::open(path).map_err(|e| io_err(path, e))?;
    f.seek(SeekFrom::End(-1)).map_err(|e| io_err(path, e))?;
    let mut b = [0u8; 1];
    f.read_exact(&mut b).map_err(|e| io_err(path, e))?;
    Ok(b[0] == b'\n')
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn hash_ignores_key_order() {
        let a = request_hash("alpha", &json!({"n": 3, "k": 5}), 1, Field::default());
        let b = request_hash("alpha", &json!({"k": 5, "n": 3}), 1, Field::default());
        assert_eq!(a, b);
        assert_ne!(a, request_hash("alpha", &json!({"n": 3, "k": 5}), 2, Field::default()));
        assert_ne!(a, request_hash("alpha", &json!({"n": 3, "k": 5}), 1, Field::Rational));
    }

    #[test]
    fn round_trip_torn_line_and_version() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("c.jsonl");
        let h = request_hash("x", &json!({}), 0, Field::default());
        {
            let mut c = Cache::open(&path).unwrap();
            c.store(h.clone(), "x", json!({"value": 7})).unwrap();
        }
        std::fs::OpenOptions::new().append(true).open(&path).unwrap().write_all(b"{\"request_hash\":").unwrap();
        let mut c = Cache::open(&path).unwrap();
        assert_eq!(c.lookup(&h).unwrap().payload, json!({"value": 7}));
        assert_eq!(c.skipped(), 1);
        let h2 = request_hash("y", &json!({}), 0, Field::default());
        c.store(h2.clone(), "y", json!(1)).unwrap();
        drop(c);
        let c = Cache::open(&path).unwrap();
        assert!(c.lookup(&h2).is_some());
        let old = Cache::open_with_version(&path, "0.0.0-other").unwrap();
        assert!(old.is_empty());
    }
}
