//! On-disk cache of built representations, one JSON file per `(type, hw)`.
//!
//! Readers never lock: files are written to a temporary name and renamed
//! into place. Writers serialize through a lockfile in the cache directory.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::thread;
use std::time::{Duration, SystemTime};

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Generator, Irrep, Label, RepError, WeightSpace};
use crate::linalg::QMatrix;
use crate::ratfun::Scalar;
use crate::rootdata::{LieType, RootSystem, Weight};

pub const CACHE_VERSION: u32 = 1;
const LOCK_NAME: &str = ".lock";
const LOCK_STALE: Duration = Duration::from_secs(120);
const LOCK_WAIT: Duration = Duration::from_secs(60);

#[derive(Debug, Error)]
pub enum CacheError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{path}: malformed cache file: {msg}")]
    Format { path: PathBuf, msg: String },
    #[error("{path}: timed out waiting for the cache lock")]
    LockTimeout { path: PathBuf },
    #[error(transparent)]
    Rep(#[from] RepError),
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CacheError + '_ {
    move |source| CacheError::Io { path: path.to_path_buf(), source }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct SpaceJson {
    weight: Weight,
    depth: usize,
    labels: Vec<Label>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct GeneratorsJson {
    e: Vec<Vec<(usize, usize, String)>>,
    f: Vec<Vec<(usize, usize, String)>>,
    h: Vec<Vec<(usize, usize, String)>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
struct IrrepJson {
    version: u32,
    #[serde(rename = "type")]
    lie_type: LieType,
    hw: Weight,
    dim: usize,
    weights: Vec<SpaceJson>,
    generators: GeneratorsJson,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CacheEntry {
    #[serde(rename = "type")]
    pub lie_type: LieType,
    pub hw: Weight,
    pub dim: usize,
    pub path: PathBuf,
}

fn triplets(v: &Irrep, kind: Generator) -> Vec<Vec<(usize, usize, String)>> {
    (1..=v.rank())
        .map(|i| v.global_matrix(kind, i).triplets().map(|(r, c, x)| (r, c, x.to_string())).collect())
        .collect()
}

fn encode(v: &Irrep) -> IrrepJson {
    IrrepJson {
        version: CACHE_VERSION,
        lie_type: v.lie_type(),
        hw: v.highest_weight().clone(),
        dim: v.dim(),
        weights: v
            .weight_spaces()
            .iter()
            .map(|s| SpaceJson { weight: s.weight.clone(), depth: s.depth, labels: s.labels.clone() })
            .collect(),
        generators: GeneratorsJson { e: triplets(v, Generator::E), f: triplets(v, Generator::F), h: triplets(v, Generator::H) },
    }
}

fn decode(j: IrrepJson) -> Result<Irrep, String> {
    if j.version != CACHE_VERSION {
        return Err(format!("version {} (expected {CACHE_VERSION})", j.version));
    }
    let roots = RootSystem::new(j.lie_type);
    let r = roots.rank();
    if j.hw.rank() != r || j.generators.e.len() != r || j.generators.f.len() != r {
        return Err("rank mismatch".into());
    }
    let mut spaces = Vec::with_capacity(j.weights.len());
    let mut offset = 0;
    for s in j.weights {
        let dim = s.labels.len();
        spaces.push(WeightSpace { weight: s.weight, depth: s.depth, offset, labels: s.labels });
        offset += dim;
    }
    if offset != j.dim {
        return Err("dimension does not match the weight spaces".into());
    }
    // Locate the weight space containing each global index.
    let mut owner = vec![0usize; offset];
    for (s, sp) in spaces.iter().enumerate() {
        for k in 0..sp.dim() {
            owner[sp.offset + k] = s;
        }
    }
    let blocks = |trips: &[Vec<(usize, usize, String)>], sign: i64| -> Result<Vec<Vec<Option<QMatrix>>>, String> {
        let mut out = Vec::with_capacity(r);
        for (i, list) in trips.iter().enumerate() {
            let alpha = roots.simple_root(i + 1).scale(sign);
            let mut per: Vec<Option<QMatrix>> = vec![None; spaces.len()];
            for (s, sp) in spaces.iter().enumerate() {
                let target = sp.weight.add(&alpha);
                if let Some(t) = spaces.iter().find(|t| t.weight == target) {
                    per[s] = Some(QMatrix::zeros(t.dim(), sp.dim()));
                }
            }
            for (row, col, val) in list {
                if *row >= offset || *col >= offset {
                    return Err("triplet index out of range".into());
                }
                let (sr, sc) = (owner[*row], owner[*col]);
                if spaces[sr].weight != spaces[sc].weight.add(&alpha) {
                    return Err("generator entry does not respect weights".into());
                }
                let x: Scalar = val.parse().map_err(|_| format!("bad rational `{val}`"))?;
                let b = per[sc].as_mut().ok_or("missing block")?;
                b[(row - spaces[sr].offset, col - spaces[sc].offset)] = x;
            }
            out.push(per);
        }
        Ok(out)
    };
    let e = blocks(&j.generators.e, 1)?;
    let f = blocks(&j.generators.f, -1)?;
    Ok(Irrep::from_parts(roots, j.hw, spaces, e, f))
}

/// A cache rooted at one directory.
#[derive(Debug, Clone)]
pub struct IrrepCache {
    dir: PathBuf,
}

struct LockGuard {
    path: PathBuf,
}

impl Drop for LockGuard {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.path);
    }
}

impl IrrepCache {
    pub fn new(dir: impl Into<PathBuf>) -> Self {
        IrrepCache { dir: dir.into() }
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn path_for(&self, t: LieType, hw: &Weight) -> PathBuf {
        let coords: Vec<String> = hw.0.iter().map(i64::to_string).collect();
        self.dir.join(format!("{t}_{}.json", coords.join("_")))
    }

    /// Reads a cached irrep; `Ok(None)` when there is no file.
    pub fn load(&self, t: LieType, hw: &Weight) -> Result<Option<Irrep>, CacheError> {
        let path = self.path_for(t, hw);
        let text = match fs::read_to_string(&path) {
            Ok(s) => s,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(None),
            Err(e) => return Err(io_err(&path)(e)),
        };
        let j: IrrepJson =
            serde_json::from_str(&text).map_err(|e| CacheError::Format { path: path.clone(), msg: e.to_string() })?;
        if j.lie_type != t || &j.hw != hw {
            return Err(CacheError::Format { path, msg: "key does not match contents".into() });
        }
        decode(j).map(Some).map_err(|msg| CacheError::Format { path, msg })
    }

    fn lock(&self) -> Result<LockGuard, CacheError> {
        fs::create_dir_all(&self.dir).map_err(io_err(&self.dir))?;
        let path = self.dir.join(LOCK_NAME);
        let start = SystemTime::now();
        loop {
            match fs::OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(LockGuard { path });
                }
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    let stale = fs::metadata(&path)
                        .and_then(|m| m.modified())
                        .ok()
                        .and_then(|t| t.elapsed().ok())
                        .is_some_and(|age| age > LOCK_STALE);
                    if stale {
                        let _ = fs::remove_file(&path);
                        continue;
                    }
                    if start.elapsed().unwrap_or_default() > LOCK_WAIT {
                        return Err(CacheError::LockTimeout { path });
                    }
                    thread::sleep(Duration::from_millis(25));
                }
                Err(e) => return Err(io_err(&path)(e)),
            }
        }
    }

    pub fn store(&self, v: &Irrep) -> Result<PathBuf, CacheError> {
        let _guard = self.lock()?;
        let path = self.path_for(v.lie_type(), v.highest_weight());
        let text = serde_json::to_string(&encode(v)).expect("irrep JSON is serializable");
        let tmp = self.dir.join(format!(".{}.tmp", std::process::id()));
        fs::write(&tmp, text).map_err(io_err(&tmp))?;
        fs::rename(&tmp, &path).map_err(io_err(&path))?;
        Ok(path)
    }

    /// Loads from the cache, or builds and stores. The dimension cap applies
    /// to cached entries as well.
    pub fn get_or_build(&self, t: LieType, hw: &Weight, dim_cap: usize) -> Result<Irrep, CacheError> {
        if let Some(v) = self.load(t, hw)? {
            if v.dim() > dim_cap {
                return Err(RepError::DimensionCap { dim: BigInt::from(v.dim()), cap: dim_cap }.into());
            }
            return Ok(v);
        }
        let v = Irrep::build(t, hw, dim_cap)?;
        self.store(&v)?;
        Ok(v)
    }

    /// Builds and stores unless an entry exists. Returns true when a new
    /// entry was written.
    pub fn warm(&self, t: LieType, hw: &Weight, dim_cap: usize) -> Result<bool, CacheError> {
        if self.path_for(t, hw).exists() {
            return Ok(false);
        }
        let v = Irrep::build(t, hw, dim_cap)?;
        self.store(&v)?;
        Ok(true)
    }

    pub fn list(&self) -> Result<Vec<CacheEntry>, CacheError> {
        let rd = match fs::read_dir(&self.dir) {
            Ok(rd) => rd,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(Vec::new()),
            Err(e) => return Err(io_err(&self.dir)(e)),
        };
        let mut out = Vec::new();
        for entry in rd {
            let path = entry.map_err(io_err(&self.dir))?.path();
            if path.extension().is_none_or(|x| x != "json") {
                continue;
            }
            let text = fs::read_to_string(&path).map_err(io_err(&path))?;
            #[derive(Deserialize)]
            struct Header {
                #[serde(rename = "type")]
                lie_type: LieType,
                hw: Weight,
                dim: usize,
            }
            let h: Header =
                serde_json::from_str(&text).map_err(|e| CacheError::Format { path: path.clone(), msg: e.to_string() })?;
            out.push(CacheEntry { lie_type: h.lie_type, hw: h.hw, dim: h.dim, path });
        }
        out.sort_by(|a, b| (a.lie_type, &a.hw).cmp(&(b.lie_type, &b.hw)));
        Ok(out)
    }

    /// Removes all cache entries; returns how many were removed.
    pub fn clear(&self) -> Result<usize, CacheError> {
        if !self.dir.exists() {
            return Ok(0);
        }
        let _guard = self.lock()?;
        let mut n = 0;
        for entry in fs::read_dir(&self.dir).map_err(io_err(&self.dir))? {
            let path = entry.map_err(io_err(&self.dir))?.path();
            if path.extension().is_some_and(|x| x == "json") {
                fs::remove_file(&path).map_err(io_err(&path))?;
                n += 1;
            }
        }
        Ok(n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IrrepCache::new(dir.path());
        let t: LieType = "B2".parse().unwrap();
        let hw = Weight(vec![1, 1]);
        assert!(cache.load(t, &hw).unwrap().is_none());
        let built = cache.get_or_build(t, &hw, 500).unwrap();
        let loaded = cache.load(t, &hw).unwrap().unwrap();
        assert_eq!(loaded.dim(), built.dim());
        assert_eq!(loaded.weight_spaces(), built.weight_spaces());
        for i in 1..=2 {
            for g in [Generator::E, Generator::F, Generator::H] {
                assert_eq!(loaded.global_matrix(g, i), built.global_matrix(g, i));
            }
        }
        assert!(loaded.relation_violations().is_empty());
        let mu = Weight(vec![0, 1]);
        assert_eq!(loaded.sl2_strings(1, &mu).unwrap(), built.sl2_strings(1, &mu).unwrap());
    }

    #[test]
    fn list_warm_clear() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IrrepCache::new(dir.path().join("sub"));
        assert!(cache.list().unwrap().is_empty());
        let t: LieType = "A2".parse().unwrap();
        assert!(cache.warm(t, &Weight(vec![1, 1]), 500).unwrap());
        assert!(!cache.warm(t, &Weight(vec![1, 1]), 500).unwrap());
        let l = cache.list().unwrap();
        assert_eq!(l.len(), 1);
        assert_eq!(l[0].dim, 8);
        assert!(!dir.path().join("sub").join(LOCK_NAME).exists());
        assert_eq!(cache.clear().unwrap(), 1);
        assert!(cache.list().unwrap().is_empty());
    }

    #[test]
    fn corrupt_file_is_reported() {
        let dir = tempfile::tempdir().unwrap();
        let cache = IrrepCache::new(dir.path());
        let t: LieType = "A1".parse().unwrap();
        let hw = Weight(vec![1]);
        fs::write(cache.path_for(t, &hw), "{not json").unwrap();
        assert!(matches!(cache.load(t, &hw), Err(CacheError::Format { .. })));
    }
}
