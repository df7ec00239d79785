//! On-disk series cache: one JSON file per named expansion, coefficients as
//! decimal strings.

use std::fs;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::series::PowerSeries;

pub const CACHE_DIR_ENV: &str = "MODCONG_CACHE_DIR";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedSeries {
    pub name: String,
    pub n: Option<u32>,
    pub prec: usize,
    pub coeffs: Vec<BigInt>,
}

impl CachedSeries {
    pub fn new(name: impl Into<String>, n: Option<u32>, series: &PowerSeries) -> Self {
        Self { name: name.into(), n, prec: series.prec(), coeffs: series.coeffs().to_vec() }
    }

    pub fn to_series(&self) -> Result<PowerSeries> {
        PowerSeries::new(self.coeffs.clone(), self.prec)
    }

    pub fn to_json_value(&self) -> Value {
        json!({
            "name": self.name,
            "n": self.n,
            "prec": self.prec,
            "coeffs": self.coeffs.iter().map(ToString::to_string).collect::<Vec<_>>(),
        })
    }

    pub fn from_json_value(v: &Value) -> Result<Self> {
        let bad = |what: &str| Error::Cache(format!("malformed cache entry: {what}"));
        let name = v["name"].as_str().ok_or_else(|| bad("name"))?.to_owned();
        let n = match &v["n"] {
            Value::Null => None,
            x => Some(x.as_u64().and_then(|n| u32::try_from(n).ok()).ok_or_else(|| bad("n"))?),
        };
        let prec = v["prec"].as_u64().ok_or_else(|| bad("prec"))? as usize;
        let coeffs = v["coeffs"]
            .as_array()
            .ok_or_else(|| bad("coeffs"))?
            .iter()
            .map(|c| c.as_str().and_then(|s| s.parse::<BigInt>().ok()).ok_or_else(|| bad("coefficient")))
            .collect::<Result<Vec<_>>>()?;
        if coeffs.len() != prec {
            return Err(bad("coefficient count differs from prec"));
        }
        Ok(Self { name, n, prec, coeffs })
    }
}

/// `MODCONG_CACHE_DIR`, or `.modcong-cache` in the working directory.
pub fn default_dir() -> PathBuf {
    std::env::var_os(CACHE_DIR_ENV).map_or_else(|| PathBuf::from(".modcong-cache"), PathBuf::from)
}

pub fn file_name(name: &str, n: Option<u32>) -> String {
    match n {
        Some(n) => format!("{name}_{n}.json"),
        None => format!("{name}.json"),
    }
}

pub fn write(dir: &Path, entry: &CachedSeries) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let path = dir.join(file_name(&entry.name, entry.n));
    fs::write(&path, serde_json::to_string_pretty(&entry.to_json_value())?)?;
    Ok(path)
}

pub fn read(dir: &Path, name: &str, n: Option<u32>) -> Result<CachedSeries> {
    let path = dir.join(file_name(name, n));
    let text = fs::read_to_string(&path).map_err(|e| Error::Cache(format!("{}: {e}", path.display())))?;
    CachedSeries::from_json_value(&serde_json::from_str(&text)?)
}

/// Removes every `.json` entry in `dir`; returns how many were removed.
pub fn clear(dir: &Path) -> Result<usize> {
    if !dir.exists() {
        return Ok(0);
    }
    let mut removed = 0;
    for entry in fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            fs::remove_file(&path)?;
            removed += 1;
        }
    }
    Ok(removed)
}
