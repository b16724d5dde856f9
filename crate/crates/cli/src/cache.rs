//! Content-addressed JSON cache for expensive results.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use serde::de::DeserializeOwned;
use serde::Serialize;
use sha2::{Digest, Sha256};

/// Bumped whenever a cached payload changes shape.
const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug)]
pub struct Cache {
    dir: Option<PathBuf>,
}

impl Cache {
    pub fn new(dir: Option<PathBuf>) -> Self {
        Cache { dir }
    }

    /// File name for a request: sha256 over the command and its parameters.
    pub fn key(command: &str, n: usize, k: Option<usize>) -> String {
        let request =
            format!("v{FORMAT_VERSION};command={command};n={n};k={}", k.map_or("-".into(), |k| k.to_string()));
        format!("{}.json", hex::encode(Sha256::digest(request.as_bytes())))
    }

    fn path(&self, command: &str, n: usize, k: Option<usize>) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(Self::key(command, n, k)))
    }

    /// Returns the cached value or computes and stores it. The boolean is true on a hit.
    pub fn get_or_compute<T, F>(&self, command: &str, n: usize, k: Option<usize>, compute: F) -> Result<(T, bool)>
    where
        T: Serialize + DeserializeOwned,
        F: FnOnce() -> Result<T>,
    {
        let Some(path) = self.path(command, n, k) else {
            return Ok((compute()?, false));
        };
        if path.exists() {
            let text = fs::read_to_string(&path).with_context(|| format!("reading cache file {}", path.display()))?;
            if let Ok(value) = serde_json::from_str(&text) {
                return Ok((value, true));
            }
            // unreadable entries are recomputed and overwritten
        }
        let value = compute()?;
        write_atomic(&path, &serde_json::to_string(&value)?)?;
        Ok((value, false))
    }
}

fn write_atomic(path: &Path, contents: &str) -> Result<()> {
    let dir = path.parent().expect("cache files live in a directory");
    fs::create_dir_all(dir).with_context(|| format!("creating cache directory {}", dir.display()))?;
    let tmp = path.with_extension(format!("tmp{}", std::process::id()));
    fs::write(&tmp, contents).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("moving {} into place", tmp.display()))?;
    Ok(())
}
