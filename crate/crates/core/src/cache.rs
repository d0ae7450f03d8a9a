//! Persistent per-word cache of self-intersection numbers.
//!
//! One JSON file per canonical word. Writes go to a temporary file in the
//! same directory and are renamed into place, so concurrent writers never
//! leave a torn entry behind.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::oracle::{self_intersection_number, CrossingCount, Drawing};
use crate::word::{Word, WordKind};

/// Bumped whenever the drawing model or witness layout changes.
pub const MODEL_VERSION: u32 = 1;

pub const CACHE_ENV: &str = "LOOPFORGE_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".loopforge-cache";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheEntry {
    pub word: Word,
    pub value: u32,
    pub exact: bool,
    pub witness: Drawing,
    pub version: u32,
}

#[derive(Clone, Debug)]
pub struct OracleCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl OracleCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn file_name(word: &Word) -> String {
        let kind = match word.kind() {
            WordKind::X => "x",
            WordKind::V => "v",
        };
        let letters: Vec<String> = word.letters().iter().map(|l| l.to_string()).collect();
        format!("{kind}_{}.json", letters.join("-"))
    }

    /// Exact entry for a canonical word, if present and current.
    pub fn get(&self, canonical: &Word) -> Option<CacheEntry> {
        let text = fs::read_to_string(self.dir.join(Self::file_name(canonical))).ok()?;
        let entry: CacheEntry = serde_json::from_str(&text).ok()?;
        (entry.version == MODEL_VERSION && entry.exact && &entry.word == canonical).then_some(entry)
    }

    pub fn put(&self, entry: &CacheEntry) -> Result<()> {
        let name = Self::file_name(&entry.word);
        let tmp = self.dir.join(format!(
            ".{name}.{}.{}.tmp",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let text = serde_json::to_string(entry).expect("cache entries serialize");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, self.dir.join(name))?;
        Ok(())
    }
}

/// Self-intersection oracle with an optional persistent cache.
#[derive(Clone, Debug)]
pub struct Oracle {
    pub budget: u64,
    pub cache: Option<OracleCache>,
}

impl Oracle {
    pub fn new(budget: u64, cache: Option<OracleCache>) -> Self {
        Self { budget, cache }
    }

    pub fn self_intersection(&self, word: &Word) -> Result<CrossingCount> {
        let (canon, reversed) = word.canonical_orientation();
        let cached = self.cache.as_ref().and_then(|c| c.get(&canon));
        let result = match cached {
            Some(e) => CrossingCount { value: e.value, exact: e.exact, witness: e.witness },
            None => {
                let r = self_intersection_number(&canon, self.budget);
                if let (Some(c), true) = (&self.cache, r.exact) {
                    c.put(&CacheEntry {
                        word: canon.clone(),
                        value: r.value,
                        exact: r.exact,
                        witness: r.witness.clone(),
                        version: MODEL_VERSION,
                    })?;
                }
                r
            }
        };
        if reversed {
            let len = canon.points().len() as u16;
            Ok(CrossingCount { witness: result.witness.reverse_curve(0, len), ..result })
        } else {
            Ok(result)
        }
    }
}
