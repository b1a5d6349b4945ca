use sha2::{Digest, Sha256};
use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Content-addressed result cache. Opt-in: engaged only when a directory is
/// given by flag or by PROJZETA_CACHE. Entries hold the canonical JSON of one
/// command result; the key covers the operation, its parameters, and the
/// crate version, so stale results never surface across releases.
pub struct Cache {
    dir: Option<PathBuf>,
}

pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

pub fn cache_key(op: &str, params: &BTreeMap<String, String>, version: &str) -> String {
    let request = serde_json::json!({
        "op": op,
        "params": params,
        "version": version,
    });
    let bytes = serde_json::to_string(&request).expect("key render");
    let mut h = Sha256::new();
    h.update(bytes.as_bytes());
    let digest = h.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

impl Cache {
    /// Flag wins over the environment; neither means caching stays off.
    pub fn from_options(flag: Option<PathBuf>) -> Self {
        let dir = flag.or_else(|| std::env::var_os("PROJZETA_CACHE").map(PathBuf::from));
        Cache { dir }
    }

    pub fn disabled() -> Self {
        Cache { dir: None }
    }

    fn entry_path(&self, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{key}.json")))
    }

    /// Returns the cached bytes verbatim on a hit; otherwise computes,
    /// stores atomically, and returns the fresh bytes. A present-but-invalid
    /// entry is recomputed with a warning rather than trusted or fatal.
    pub fn load_or_compute<E>(
        &self,
        op: &str,
        params: &BTreeMap<String, String>,
        compute: impl FnOnce() -> Result<String, E>,
    ) -> Result<String, E> {
        let key = cache_key(op, params, version());
        let path = match self.entry_path(&key) {
            Some(p) => p,
            None => return compute(),
        };
        if let Ok(bytes) = fs::read_to_string(&path) {
            if serde_json::from_str::<serde_json::Value>(&bytes).is_ok() {
                return Ok(bytes);
            }
            eprintln!(
                "warning: corrupt cache entry {} ; recomputing",
                path.display()
            );
        }
        let fresh = compute()?;
        if let Err(e) = write_atomic(&path, fresh.as_bytes()) {
            eprintln!("warning: cache write failed ({e}); continuing uncached");
        }
        Ok(fresh)
    }
}

/// Write via a sibling temp file and rename so readers never see a partial
/// entry and a crash never leaves one behind under the final name.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> std::io::Result<()> {
    let dir = path.parent().unwrap_or_else(|| Path::new("."));
    fs::create_dir_all(dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(bytes)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
