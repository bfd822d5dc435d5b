//! On-disk γ table: versioned JSON with a SHA-256 checksum.
//!
//! Writers hold an exclusive advisory lock on the cache file for the whole
//! read-compute-write cycle; readers take a shared lock.

use std::fs::{File, OpenOptions};
use std::io::{Read, Seek, SeekFrom, Write};
use std::path::{Path, PathBuf};

use brenke_core::numerics::BallReal;
use brenke_core::zetacoeffs::{QuadratureParams, ZetaCoefficientTable};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{AppError, Result};
use crate::gamma::parallel_gamma_table;

pub const CACHE_VERSION: u32 = 1;
pub const CACHE_ENV: &str = "BRENKE_CACHE";
pub const DEFAULT_CACHE_FILE: &str = "brenke-gamma-cache.json";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallText {
    pub mid: String,
    pub rad: String,
}

impl BallText {
    pub fn of(b: &BallReal) -> BallText {
        BallText { mid: b.mid_decimal(), rad: b.rad_decimal() }
    }

    fn ball(&self, bits: u32) -> std::result::Result<BallReal, String> {
        BallReal::from_decimal_parts(&self.mid, &self.rad, bits).map_err(|e| e.to_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GammaEntry {
    pub n: usize,
    pub mid: String,
    pub rad: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CachePayload {
    pub version: u32,
    pub bits: u32,
    #[serde(rename = "U")]
    pub cutoff: u32,
    #[serde(rename = "K")]
    pub terms: usize,
    pub degree: usize,
    pub gammas: Vec<GammaEntry>,
    pub xi_half: BallText,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CacheFile {
    #[serde(flatten)]
    pub payload: CachePayload,
    pub checksum: String,
}

impl CachePayload {
    pub fn from_table(t: &ZetaCoefficientTable) -> CachePayload {
        CachePayload {
            version: CACHE_VERSION,
            bits: t.params.bits,
            cutoff: t.params.cutoff,
            terms: t.terms,
            degree: t.params.degree,
            gammas: t
                .gammas
                .iter()
                .enumerate()
                .map(|(n, g)| GammaEntry { n, mid: g.mid_decimal(), rad: g.rad_decimal() })
                .collect(),
            xi_half: BallText::of(&t.xi_half),
        }
    }

    pub fn checksum(&self) -> String {
        let body = serde_json::to_vec(self).expect("payload serializes");
        hex::encode(Sha256::digest(body))
    }

    pub fn to_table(&self) -> std::result::Result<ZetaCoefficientTable, String> {
        if self.version != CACHE_VERSION {
            return Err(format!("unsupported cache version {}", self.version));
        }
        let mut gammas = Vec::with_capacity(self.gammas.len());
        for (i, e) in self.gammas.iter().enumerate() {
            if e.n != i {
                return Err(format!("entry {i} is labelled n = {}", e.n));
            }
            gammas.push(BallText { mid: e.mid.clone(), rad: e.rad.clone() }.ball(self.bits)?);
        }
        if gammas.is_empty() {
            return Err("empty table".into());
        }
        Ok(ZetaCoefficientTable {
            gammas,
            params: QuadratureParams { bits: self.bits, cutoff: self.cutoff, degree: self.degree },
            terms: self.terms,
            xi_half: self.xi_half.ball(self.bits)?,
        })
    }
}

pub fn encode(t: &ZetaCoefficientTable) -> String {
    let payload = CachePayload::from_table(t);
    let checksum = payload.checksum();
    let mut s = serde_json::to_string_pretty(&CacheFile { payload, checksum }).expect("cache serializes");
    s.push('\n');
    s
}

pub fn decode(text: &str) -> std::result::Result<ZetaCoefficientTable, String> {
    let file: CacheFile = serde_json::from_str(text).map_err(|e| e.to_string())?;
    if file.payload.checksum() != file.checksum {
        return Err("checksum mismatch".into());
    }
    file.payload.to_table()
}

/// Cache location: an explicit path, else `$BRENKE_CACHE`, else a file in the
/// working directory.
pub fn resolve_path(explicit: Option<&Path>) -> PathBuf {
    explicit
        .map(Path::to_path_buf)
        .or_else(|| std::env::var_os(CACHE_ENV).map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_FILE))
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> AppError + '_ {
    move |source| AppError::CacheIo { path: path.to_path_buf(), source }
}

fn read_locked(f: &mut File, path: &Path) -> Result<Option<ZetaCoefficientTable>> {
    let mut text = String::new();
    f.seek(SeekFrom::Start(0)).map_err(io_err(path))?;
    f.read_to_string(&mut text).map_err(io_err(path))?;
    if text.trim().is_empty() {
        return Ok(None);
    }
    decode(&text)
        .map(Some)
        .map_err(|reason| AppError::CacheCorrupt { path: path.to_path_buf(), reason })
}

fn satisfies(t: &ZetaCoefficientTable, n_max: usize, bits: u32) -> bool {
    t.params.bits >= bits && t.max_n() >= n_max
}

/// Returns a table with at least `γ_0 … γ_{n_max}` at precision `≥ bits`,
/// reusing and extending the cache at `path`.
///
/// A cached table of sufficient precision is extended in place: its entries
/// are kept verbatim and only new indices are appended. A table of lower
/// precision is recomputed at `bits`.
pub fn load_or_extend(path: &Path, n_max: usize, bits: u32, jobs: Option<usize>) -> Result<ZetaCoefficientTable> {
    if let Ok(mut f) = File::open(path) {
        f.lock_shared().map_err(io_err(path))?;
        if let Some(t) = read_locked(&mut f, path)? {
            if satisfies(&t, n_max, bits) {
                return Ok(t);
            }
        }
    }
    let mut f = OpenOptions::new()
        .read(true)
        .write(true)
        .create(true)
        .truncate(false)
        .open(path)
        .map_err(io_err(path))?;
    f.lock().map_err(io_err(path))?;
    // another writer may have finished while we waited
    let cached = read_locked(&mut f, path)?;
    let table = match cached {
        Some(t) if satisfies(&t, n_max, bits) => return Ok(t),
        Some(old) if old.params.bits >= bits => {
            let mut fresh = parallel_gamma_table(n_max, old.params.bits, jobs)?;
            let keep = old.gammas.len();
            fresh.gammas.splice(..keep, old.gammas);
            fresh.xi_half = old.xi_half;
            fresh.terms = fresh.terms.max(old.terms);
            fresh
        }
        _ => parallel_gamma_table(n_max, bits, jobs)?,
    };
    f.set_len(0).map_err(io_err(path))?;
    f.seek(SeekFrom::Start(0)).map_err(io_err(path))?;
    f.write_all(encode(&table).as_bytes()).map_err(io_err(path))?;
    f.sync_all().map_err(io_err(path))?;
    Ok(table)
}

/// Reads the cache without computing anything.
pub fn load(path: &Path) -> Result<Option<ZetaCoefficientTable>> {
    match File::open(path) {
        Ok(mut f) => {
            f.lock_shared().map_err(io_err(path))?;
            read_locked(&mut f, path)
        }
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => Ok(None),
        Err(e) => Err(io_err(path)(e)),
    }
}

/// Where γ tables come from: a cache file, or fresh computation when `None`.
#[derive(Clone, Debug)]
pub struct GammaSource {
    pub cache: Option<PathBuf>,
    pub jobs: Option<usize>,
}

impl GammaSource {
    pub fn in_memory(jobs: Option<usize>) -> GammaSource {
        GammaSource { cache: None, jobs }
    }

    pub fn table(&self, n_max: usize, bits: u32) -> Result<ZetaCoefficientTable> {
        match &self.cache {
            Some(p) => load_or_extend(p, n_max, bits, self.jobs),
            None => parallel_gamma_table(n_max, bits, self.jobs),
        }
    }
}
