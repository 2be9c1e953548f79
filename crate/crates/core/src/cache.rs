//! On-disk cache of computed `D(n)` values.
//!
//! An exact entry is never replaced by a modular one for the same `n`.
//! Read-modify-write cycles hold an exclusive advisory lock on the file.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::Path;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use crate::bounds::DValue;
use crate::error::Result;
use crate::rank::Method;

pub const DEFAULT_CACHE_PATH: &str = "./symspan-cache.json";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    #[serde(rename = "D")]
    pub d: u64,
    pub method: Method,
    #[serde(default)]
    pub primes: Vec<u64>,
    /// Seconds since the Unix epoch.
    pub timestamp: u64,
}

impl CacheEntry {
    pub fn new(value: DValue, primes: &[u64]) -> Self {
        let primes = match value.method {
            Method::Exact => Vec::new(),
            Method::ModularConsensus => primes.to_vec(),
        };
        CacheEntry {
            d: value.value,
            method: value.method,
            primes,
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map_or(0, |d| d.as_secs()),
        }
    }

    pub fn value(&self) -> DValue {
        DValue {
            value: self.d,
            method: self.method,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    pub entries: BTreeMap<usize, CacheEntry>,
}

impl CacheFile {
    /// Inserts `entry` unless it would replace an exact value with a modular
    /// one. Returns whether the cache changed.
    pub fn insert(&mut self, n: usize, entry: CacheEntry) -> bool {
        if let Some(old) = self.entries.get(&n) {
            if old.method == Method::Exact && entry.method != Method::Exact {
                return false;
            }
        }
        self.entries.insert(n, entry);
        true
    }

    pub fn get(&self, n: usize) -> Option<&CacheEntry> {
        self.entries.get(&n)
    }

    /// Loads the cache, treating a missing or empty file as an empty cache.
    pub fn load(path: &Path) -> Result<Self> {
        match File::open(path) {
            Ok(mut f) => {
                f.lock_shared()?;
                let mut text = String::new();
                f.read_to_string(&mut text)?;
                Self::parse(&text)
            }
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(Self::default()),
            Err(e) => Err(e.into()),
        }
    }

    fn parse(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            Ok(Self::default())
        } else {
            Ok(serde_json::from_str(text)?)
        }
    }

    /// Merges `entries` into the file at `path` under an exclusive lock.
    pub fn merge_into(path: &Path, entries: impl IntoIterator<Item = (usize, CacheEntry)>) -> Result<Self> {
        let mut f = OpenOptions::new()
            .read(true)
            .write(true)
            .create(true)
            .truncate(false)
            .open(path)?;
        f.lock()?;
        let mut text = String::new();
        f.read_to_string(&mut text)?;
        let mut cache = Self::parse(&text)?;
        for (n, e) in entries {
            cache.insert(n, e);
        }
        let json = serde_json::to_string_pretty(&cache)?;
        f.set_len(0)?;
        f.seek(SeekFrom::Start(0))?;
        f.write_all(json.as_bytes())?;
        f.write_all(b"\n")?;
        f.flush()?;
        Ok(cache)
    }
}
