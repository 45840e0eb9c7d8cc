//! Content-addressed on-disk store for rational q-expansions.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use chromatic_core::arith::Rat;
use chromatic_core::modforms::{QSeries, Rationals};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

pub const CACHE_ENV: &str = "CHROMATIC_CACHE_DIR";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheStatus {
    Hit,
    Miss,
    /// Stored precision was below the request.
    Shallow,
    Corrupt,
}

#[derive(Debug, Clone)]
pub struct QCache {
    dir: PathBuf,
}

fn hex(bytes: &[u8]) -> String {
    bytes.iter().map(|b| format!("{b:02x}")).collect()
}

fn digest(id: &str, coeffs: &[String]) -> String {
    let mut h = Sha256::new();
    h.update(id.as_bytes());
    for c in coeffs {
        h.update([0u8]);
        h.update(c.as_bytes());
    }
    hex(&h.finalize())
}

/// `--cache-dir`, then the environment, then the user cache directory.
pub fn resolve_dir(flag: Option<&Path>) -> PathBuf {
    if let Some(p) = flag {
        return p.to_path_buf();
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        return PathBuf::from(p);
    }
    if let Some(p) = std::env::var_os("XDG_CACHE_HOME").filter(|p| !p.is_empty()) {
        return PathBuf::from(p).join("chromatic");
    }
    if let Some(p) = std::env::var_os("HOME").filter(|p| !p.is_empty()) {
        return PathBuf::from(p).join(".cache").join("chromatic");
    }
    std::env::temp_dir().join("chromatic-cache")
}

pub fn series_to_json(id: &str, s: &QSeries<Rationals>) -> Value {
    let coeffs: Vec<String> = s.coeffs().iter().map(Rat::to_fraction_string).collect();
    json!({
        "id": id,
        "precision": s.precision(),
        "digest": digest(id, &coeffs),
        "coeffs": coeffs,
    })
}

fn series_from_json(id: &str, v: &Value) -> Option<QSeries<Rationals>> {
    if v.get("id")?.as_str()? != id {
        return None;
    }
    let prec = v.get("precision")?.as_u64()? as usize;
    let coeffs: Vec<String> = v.get("coeffs")?.as_array()?.iter().map(|c| c.as_str().map(str::to_owned)).collect::<Option<_>>()?;
    if coeffs.len() != prec || v.get("digest")?.as_str()? != digest(id, &coeffs) {
        return None;
    }
    let rats: Vec<Rat> = coeffs.iter().map(|c| c.parse().ok()).collect::<Option<_>>()?;
    Some(QSeries::from_rats(rats))
}

impl QCache {
    pub fn open(dir: impl Into<PathBuf>) -> std::io::Result<QCache> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        Ok(QCache { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, id: &str) -> PathBuf {
        self.dir.join(format!("{}.json", hex(&Sha256::digest(id.as_bytes()))))
    }

    /// Stored series truncated to `prec`, or the reason it cannot be served.
    pub fn load(&self, id: &str, prec: usize) -> Result<QSeries<Rationals>, CacheStatus> {
        let bytes = match fs::read(self.path_for(id)) {
            Ok(b) => b,
            Err(_) => return Err(CacheStatus::Miss),
        };
        let parsed = serde_json::from_slice::<Value>(&bytes).ok().and_then(|v| series_from_json(id, &v));
        match parsed {
            None => Err(CacheStatus::Corrupt),
            Some(s) if s.precision() < prec => Err(CacheStatus::Shallow),
            Some(s) => Ok(s.truncate(prec)),
        }
    }

    /// Write through a temporary file in the cache directory and rename into place.
    pub fn store(&self, id: &str, s: &QSeries<Rationals>) -> std::io::Result<()> {
        let mut tmp = tempfile::NamedTempFile::new_in(&self.dir)?;
        tmp.write_all(serde_json::to_string(&series_to_json(id, s))?.as_bytes())?;
        tmp.as_file().sync_all()?;
        tmp.persist(self.path_for(id)).map_err(|e| e.error)?;
        Ok(())
    }

    pub fn get_or_compute(
        &self,
        id: &str,
        prec: usize,
        compute: impl FnOnce(usize) -> QSeries<Rationals>,
    ) -> (QSeries<Rationals>, CacheStatus) {
        match self.load(id, prec) {
            Ok(s) => (s, CacheStatus::Hit),
            Err(status) => {
                if status == CacheStatus::Corrupt {
                    eprintln!("warning: corrupt cache entry for {id} at {}; recomputing", self.path_for(id).display());
                }
                let s = compute(prec);
                if let Err(e) = self.store(id, &s) {
                    eprintln!("warning: could not write cache entry for {id}: {e}");
                }
                (s, status)
            }
        }
    }
}
