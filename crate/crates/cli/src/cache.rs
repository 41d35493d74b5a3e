//! On-disk ray-set cache.
//!
//! Entries are keyed by `(d, p, rho, library version)`; floats enter the key
//! through their bit patterns, so `1/6` and `0.1667` are different entries.
//! Each entry has a `.sha256` sidecar. An entry whose checksum or contents
//! do not verify is recomputed and overwritten.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use exrays_core::{rays_corr, rays_mean, Class, Ray, VERSION};
use log::{info, warn};
use sha2::{Digest, Sha256};

use crate::error::{CliError, Result};
use crate::rayset::{read_ray_set, write_ray_set};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Enumerates the rays of `spec` with the enumerator matching its kind.
pub fn enumerate(spec: &Class) -> Result<Vec<Ray>> {
    let start = Instant::now();
    let rays = match spec.rho() {
        None => rays_mean::enumerate_rays(spec)?,
        Some(_) => rays_corr::enumerate_rays(spec)?,
    };
    info!(
        "enumerated {} rays for d={} p={} rho={:?} in {:.3?}",
        rays.len(),
        spec.d(),
        spec.p(),
        spec.rho(),
        start.elapsed()
    );
    Ok(rays)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CacheOutcome {
    Hit,
    Miss,
    /// An entry existed but failed verification and was rebuilt.
    Rebuilt,
}

#[derive(Debug, Clone)]
pub struct RayCache {
    dir: PathBuf,
}

impl RayCache {
    pub fn new(dir: impl Into<PathBuf>) -> Result<Self> {
        let dir = dir.into();
        fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
        Ok(Self { dir })
    }

    pub fn dir(&self) -> &Path {
        &self.dir
    }

    pub fn key(spec: &Class) -> String {
        let rho = spec
            .rho()
            .map(|r| format!("{:016x}", r.to_bits()))
            .unwrap_or_else(|| "none".into());
        format!(
            "rays-d{}-p{:016x}-rho{}-v{}",
            spec.d(),
            spec.p().to_bits(),
            rho,
            VERSION
        )
    }

    pub fn entry_path(&self, spec: &Class) -> PathBuf {
        self.dir.join(format!("{}.txt", Self::key(spec)))
    }

    fn checksum_path(&self, spec: &Class) -> PathBuf {
        self.dir.join(format!("{}.sha256", Self::key(spec)))
    }

    fn load(&self, spec: &Class) -> Option<std::result::Result<Vec<Ray>, String>> {
        let data = fs::read(self.entry_path(spec)).ok()?;
        let Ok(sum) = fs::read_to_string(self.checksum_path(spec)) else {
            return Some(Err("missing checksum".into()));
        };
        if sum.trim() != sha256_hex(&data) {
            return Some(Err("checksum mismatch".into()));
        }
        let text = String::from_utf8(data).map_err(|e| e.to_string());
        Some(text.and_then(|t| read_ray_set(spec, &t).map_err(|e| e.to_string())))
    }

    fn store(&self, spec: &Class, rays: &[Ray]) -> Result<()> {
        let text = write_ray_set(spec, rays);
        let path = self.entry_path(spec);
        fs::write(&path, &text).map_err(|e| CliError::io(&path, e))?;
        let sum_path = self.checksum_path(spec);
        fs::write(&sum_path, sha256_hex(text.as_bytes()) + "\n")
            .map_err(|e| CliError::io(&sum_path, e))
    }

    /// Loads the rays of `spec`, enumerating and storing them on a miss.
    pub fn get(&self, spec: &Class) -> Result<(Vec<Ray>, CacheOutcome)> {
        let start = Instant::now();
        let outcome = match self.load(spec) {
            Some(Ok(rays)) => {
                info!(
                    "cache hit {} ({} rays) in {:.3?}",
                    Self::key(spec),
                    rays.len(),
                    start.elapsed()
                );
                return Ok((rays, CacheOutcome::Hit));
            }
            Some(Err(why)) => {
                warn!("discarding cache entry {}: {why}", Self::key(spec));
                CacheOutcome::Rebuilt
            }
            None => CacheOutcome::Miss,
        };
        let rays = enumerate(spec)?;
        self.store(spec, &rays)?;
        Ok((rays, outcome))
    }
}

/// Rays of `spec`, through `cache` when one is given.
pub fn rays_for(spec: &Class, cache: Option<&RayCache>) -> Result<Vec<Ray>> {
    match cache {
        Some(c) => Ok(c.get(spec)?.0),
        None => enumerate(spec),
    }
}
