//! On-disk result cache keyed by the pattern's canonical form.
//!
//! Each entry is one JSON file, written through a temporary file and a
//! rename so concurrent writers never expose a torn entry. Witnesses are
//! re-checked on every hit; an entry that fails the check is ignored.

use std::fs;
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use super::budget::SearchBudget;
use super::contains::contains_exact;
use super::erdos_rado::{f_exact, has_sunflower, ErdosRadoResult};
use super::turan::{ex_exact, TuranResult};
use super::OracleError;
use crate::canon::canonical_form;
use crate::hypergraph::Hypergraph;

pub const CACHE_DIR_ENV: &str = "UNAVOID_CACHE_DIR";
pub const CONFIG_ENV: &str = "UNAVOID_CONFIG";
pub const CONFIG_KEY: &str = "cache_dir";
const DEFAULT_CONFIG_FILE: &str = "unavoid.toml";

#[derive(Deserialize)]
struct ConfigFile {
    cache_dir: Option<PathBuf>,
}

#[derive(Serialize, Deserialize)]
struct Entry<T> {
    key: String,
    value: T,
}

#[derive(Clone, Debug)]
pub struct ResultCache {
    dir: PathBuf,
}

static TMP_COUNTER: AtomicU64 = AtomicU64::new(0);

impl ResultCache {
    pub fn open(dir: impl Into<PathBuf>) -> Result<Self, OracleError> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| OracleError::Cache(format!("{}: {e}", dir.display())))?;
        Ok(ResultCache { dir })
    }

    /// The cache named by the environment variable, else by the `cache_dir`
    /// key of the config file (`$UNAVOID_CONFIG` or `./unavoid.toml`).
    pub fn from_env() -> Result<Option<Self>, OracleError> {
        if let Some(dir) = std::env::var_os(CACHE_DIR_ENV).filter(|d| !d.is_empty()) {
            return Self::open(PathBuf::from(dir)).map(Some);
        }
        let path = std::env::var_os(CONFIG_ENV)
            .map(PathBuf::from)
            .unwrap_or_else(|| PathBuf::from(DEFAULT_CONFIG_FILE));
        match Self::dir_from_config(&path)? {
            Some(dir) => Self::open(dir).map(Some),
            None => Ok(None),
        }
    }

    pub fn dir_from_config(path: &Path) -> Result<Option<PathBuf>, OracleError> {
        let text = match fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(OracleError::Cache(format!("{}: {e}", path.display()))),
        };
        let cfg: ConfigFile =
            toml::from_str(&text).map_err(|e| OracleError::Cache(format!("{}: {e}", path.display())))?;
        Ok(cfg.cache_dir)
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    fn path(&self, key: &str) -> PathBuf {
        self.dir.join(format!("{:016x}.json", fnv1a(key.as_bytes())))
    }

    pub fn get<T: DeserializeOwned>(&self, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(key)).ok()?;
        let entry: Entry<T> = serde_json::from_str(&text).ok()?;
        (entry.key == key).then_some(entry.value)
    }

    pub fn put<T: Serialize>(&self, key: &str, value: &T) -> Result<(), OracleError> {
        let entry = Entry { key: key.to_string(), value };
        let text = serde_json::to_string(&entry).map_err(|e| OracleError::Cache(e.to_string()))?;
        let tmp = self.dir.join(format!(
            ".tmp-{}-{}",
            std::process::id(),
            TMP_COUNTER.fetch_add(1, Ordering::Relaxed)
        ));
        let io = |e: std::io::Error| OracleError::Cache(e.to_string());
        fs::write(&tmp, text).map_err(io)?;
        fs::rename(&tmp, self.path(key)).map_err(io)
    }
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf29ce484222325u64, |h, &b| (h ^ b as u64).wrapping_mul(0x100000001b3))
}

/// Where a cached answer came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Computed,
    CacheHit,
}

/// `ex_exact` through the cache. Only exact answers are stored.
pub fn ex_cached(
    cache: Option<&ResultCache>,
    n: usize,
    pattern: &Hypergraph,
    budget: SearchBudget,
) -> Result<(TuranResult, Provenance), OracleError> {
    let Some(cache) = cache else {
        return Ok((ex_exact(n, pattern, budget)?, Provenance::Computed));
    };
    let (stripped, _) = pattern.strip_isolated();
    let key = format!("ex:n={n}:{}", canonical_form(&stripped)?.to_hex());
    if let Some(hit) = cache.get::<TuranResult>(&key) {
        if hit.is_exact()
            && hit.n == n
            && hit.witness.n() == n
            && hit.witness.edge_count() == hit.lower
            && contains_exact(&hit.witness, pattern, SearchBudget::unlimited())?.is_absent()
        {
            return Ok((hit, Provenance::CacheHit));
        }
    }
    let res = ex_exact(n, pattern, budget)?;
    if res.is_exact() {
        cache.put(&key, &res)?;
    }
    Ok((res, Provenance::Computed))
}

/// `f_exact` through the cache. Only exact answers are stored.
pub fn f_cached(
    cache: Option<&ResultCache>,
    r: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<(ErdosRadoResult, Provenance), OracleError> {
    let Some(cache) = cache else {
        return Ok((f_exact(r, k, budget)?, Provenance::Computed));
    };
    let key = format!("f:r={r}:k={k}");
    if let Some(hit) = cache.get::<ErdosRadoResult>(&key) {
        let w = &hit.witness;
        if hit.value().is_some()
            && w.r() == r
            && w.edge_count() + 1 == hit.lower
            && (k == 1 || !has_sunflower(w, k)?)
        {
            return Ok((hit, Provenance::CacheHit));
        }
    }
    let res = f_exact(r, k, budget)?;
    if res.value().is_some() {
        cache.put(&key, &res)?;
    }
    Ok((res, Provenance::Computed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::sunflower_pattern;
    use crate::shapes::SunflowerShape;

    #[test]
    fn hit_after_miss_and_tamper_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let p = sunflower_pattern(SunflowerShape::new(3, 2, 2).unwrap());
        let (a, prov) = ex_cached(Some(&cache), 6, &p, SearchBudget::unlimited()).unwrap();
        assert_eq!(prov, Provenance::Computed);
        // a relabelled pattern hits the same entry
        let q = p.relabel(&[3, 1, 0, 2], 4);
        let (b, prov) = ex_cached(Some(&cache), 6, &q, SearchBudget::unlimited()).unwrap();
        assert_eq!(prov, Provenance::CacheHit);
        assert_eq!(a, b);

        let key = format!("ex:n=6:{}", canonical_form(&p).unwrap().to_hex());
        let mut bad = a.clone();
        bad.witness = Hypergraph::new(3, 6, [[0, 1, 2], [0, 1, 3]]).unwrap();
        bad.lower = 2;
        bad.upper = 2;
        cache.put(&key, &bad).unwrap();
        let (c, prov) = ex_cached(Some(&cache), 6, &p, SearchBudget::unlimited()).unwrap();
        assert_eq!(prov, Provenance::Computed);
        assert_eq!(c, a);
    }

    #[test]
    fn config_file_key() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = dir.path().join("unavoid.toml");
        fs::write(&cfg, "cache_dir = \"/tmp/somewhere\"\n").unwrap();
        assert_eq!(
            ResultCache::dir_from_config(&cfg).unwrap(),
            Some(PathBuf::from("/tmp/somewhere"))
        );
        assert_eq!(ResultCache::dir_from_config(&dir.path().join("missing.toml")).unwrap(), None);
    }

    #[test]
    fn f_roundtrip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = ResultCache::open(dir.path()).unwrap();
        let (a, _) = f_cached(Some(&cache), 2, 3, SearchBudget::unlimited()).unwrap();
        let (b, prov) = f_cached(Some(&cache), 2, 3, SearchBudget::unlimited()).unwrap();
        assert_eq!(prov, Provenance::CacheHit);
        assert_eq!(a, b);
    }
}
