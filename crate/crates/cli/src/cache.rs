//! On-disk result cache. Entries are the canonical report lines of one
//! (group, prime) task, stored under a key that covers everything the lines
//! depend on.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use indres::checker::Mode;
use indres::Limits;
use serde_json::Value;
use sha2::{Digest, Sha256};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "INDRES_CACHE_DIR";

/// Bumped whenever a change in the engine can change any report line.
pub const ENGINE_VERSION: &str = concat!("indres-", env!("CARGO_PKG_VERSION"), "+engine1");

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

#[derive(Debug, Clone)]
pub struct Cache {
    dir: PathBuf,
}

pub struct CacheKey<'a> {
    pub content_hash: &'a str,
    pub prime: u64,
    pub mode: Mode,
    pub filters: bool,
    pub limits: &'a Limits,
}

impl Cache {
    pub fn new(dir: impl Into<PathBuf>) -> io::Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Cache { dir })
    }

    /// The cache named by `INDRES_CACHE_DIR`, if set and non-empty.
    pub fn from_env() -> io::Result<Option<Self>> {
        match std::env::var_os(CACHE_ENV) {
            Some(d) if !d.is_empty() => Cache::new(d).map(Some),
            _ => Ok(None),
        }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(k: &CacheKey<'_>) -> String {
        let material = format!(
            "{ENGINE_VERSION}\n{}\n{}\n{}\n{}\n{:?}",
            k.content_hash,
            k.prime,
            k.mode.as_str(),
            k.filters,
            k.limits
        );
        hex::encode(Sha256::digest(material.as_bytes()))
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{key}.jsonl"))
    }

    /// Cached lines; unreadable or corrupt entries count as misses.
    pub fn get(&self, key: &str) -> Option<Vec<Value>> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        text.lines().map(|l| serde_json::from_str(l).ok()).collect()
    }

    /// Writes to a temporary file and renames it into place.
    pub fn put(&self, key: &str, lines: &[Value]) -> io::Result<()> {
        let n = TMP_COUNTER.fetch_add(1, Ordering::Relaxed);
        let tmp = self.dir.join(format!(".{key}.{}.{n}.tmp", std::process::id()));
        {
            let mut f = fs::File::create(&tmp)?;
            for l in lines {
                f.write_all(crate::report::encode(l).as_bytes())?;
            }
            f.sync_all()?;
        }
        fs::rename(&tmp, self.path(key))
    }
}
