//! Fine-grid WENO-JS reference solutions with an on-disk cache.
//!
//! A cache file holds the field CSV followed by a footer line
//! `#checksum <hex>`, the first 8 bytes of the SHA-256 of everything before
//! it. Files are written through a temporary file and renamed into place, so
//! concurrent readers see either nothing or a complete file.

use std::fs;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use super::ProblemSpec;
use crate::error::Error;
use crate::harness::{run_spec, RunConfig};
use crate::io::{format_field_csv, parse_columns_csv, write_atomic};
use crate::kernels::{SchemeParams, Variant};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "WENO_LAB_CACHE";

/// Minimum ratio of reference to default resolution.
pub const MIN_REFINEMENT: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceSolution {
    pub problem: String,
    pub n: usize,
    pub t_end: f64,
    pub x: Vec<f64>,
    /// Column names, e.g. `u` or `rho,u,p`.
    pub names: Vec<String>,
    pub columns: Vec<Vec<f64>>,
}

impl ReferenceSolution {
    pub fn column(&self, name: &str) -> Option<&[f64]> {
        self.names.iter().position(|n| n == name).map(|k| self.columns[k].as_slice())
    }

    /// Column `col` at the points `xs`, linearly interpolated between fine
    /// cell centres and held constant beyond the outermost ones.
    ///
    /// With a refinement ratio of 10, a coarse centre falls exactly on a fine
    /// cell face, where a nearest-centre lookup would be a tie; interpolation
    /// takes the mean of the two neighbours instead.
    pub fn sample_column(&self, col: usize, xs: &[f64]) -> Vec<f64> {
        let v = &self.columns[col];
        let (x0, n) = (self.x[0], self.x.len());
        let h = (self.x[n - 1] - x0) / (n - 1) as f64;
        xs.iter()
            .map(|&x| {
                let s = (x - x0) / h;
                if s <= 0.0 {
                    return v[0];
                }
                if s >= (n - 1) as f64 {
                    return v[n - 1];
                }
                let k = (s.floor() as usize).min(n - 2);
                let w = s - k as f64;
                (1.0 - w) * v[k] + w * v[k + 1]
            })
            .collect()
    }
}

pub fn default_cache_dir() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| std::env::temp_dir().join("weno-lab-cache"))
}

/// Cache file for `(problem, n, t_end)`.
pub fn cache_path(dir: &Path, problem: &str, n: usize, t_end: f64) -> PathBuf {
    dir.join(format!("{problem}_n{n}_t{t_end}.csv"))
}

fn checksum(bytes: &[u8]) -> String {
    Sha256::digest(bytes)[..8].iter().map(|b| format!("{b:02x}")).collect()
}

/// Writes a reference in the cache format.
pub fn write_reference(path: &Path, r: &ReferenceSolution) -> Result<(), Error> {
    let mut names: Vec<&str> = vec!["x"];
    names.extend(r.names.iter().map(String::as_str));
    let mut cols: Vec<&[f64]> = vec![&r.x];
    cols.extend(r.columns.iter().map(Vec::as_slice));
    let mut text = crate::io::format_columns_csv(&names, &cols, 1)?;
    let sum = checksum(text.as_bytes());
    text.push_str(&format!("#checksum {sum}\n"));
    write_atomic(path, text.as_bytes())
}

/// Reads a cache file, verifying its checksum footer.
pub fn read_reference(path: &Path, problem: &str, n: usize, t_end: f64) -> Result<ReferenceSolution, Error> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let corrupt = || Error::CacheCorrupt { path: path.to_path_buf() };
    let text = std::str::from_utf8(&bytes).map_err(|_| corrupt())?;
    let body_end = text.trim_end_matches('\n').rfind('\n').map(|k| k + 1).ok_or_else(corrupt)?;
    let (body, footer) = text.split_at(body_end);
    let stored = footer.trim_end().strip_prefix("#checksum ").ok_or_else(corrupt)?;
    if stored != checksum(body.as_bytes()) {
        return Err(corrupt());
    }
    let (header, mut cols) = parse_columns_csv(path, body)?;
    if header.first().map(String::as_str) != Some("x") || cols.len() < 2 || cols[0].len() != n {
        return Err(corrupt());
    }
    let x = cols.remove(0);
    Ok(ReferenceSolution { problem: problem.to_string(), n, t_end, x, names: header[1..].to_vec(), columns: cols })
}

/// WENO-JS solution of `spec` on `fine_n` cells at `spec.t_end`, read from the
/// cache when present and computed and stored otherwise.
///
/// `cache_dir` defaults to [`default_cache_dir`]. A cache file whose checksum
/// does not match is reported, not silently replaced.
pub fn reference_solution(
    spec: &ProblemSpec,
    fine_n: usize,
    cache_dir: Option<&Path>,
) -> Result<ReferenceSolution, Error> {
    let coarse = spec.default_n[0];
    if fine_n < MIN_REFINEMENT * coarse {
        return Err(Error::Precondition(format!(
            "reference needs at least {} cells ({}x the default {coarse}), got {fine_n}",
            MIN_REFINEMENT * coarse,
            MIN_REFINEMENT
        )));
    }
    let dir = cache_dir.map(Path::to_path_buf).unwrap_or_else(default_cache_dir);
    let path = cache_path(&dir, &spec.name, fine_n, spec.t_end);
    if path.exists() {
        return read_reference(&path, &spec.name, fine_n, spec.t_end);
    }
    let cfg = RunConfig::new(&spec.name, SchemeParams::new(Variant::Js)).with_n(fine_n);
    let out = run_spec(spec, &cfg)?;
    let text = format_field_csv(&out.solution);
    // Go through the text form so a fresh result equals a cached one exactly.
    let (header, mut cols) = parse_columns_csv(&path, &text)?;
    let x = cols.remove(0);
    let r = ReferenceSolution {
        problem: spec.name.clone(),
        n: fine_n,
        t_end: spec.t_end,
        x,
        names: header[1..].to_vec(),
        columns: cols,
    };
    write_reference(&path, &r)?;
    Ok(r)
}
