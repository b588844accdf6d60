//! Run configuration: defaults, flat `key = value` files, and flag overrides.

use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use pg_cubic::Error;

use crate::output::Value;

pub const CONFIG_ENV: &str = "PG_CUBIC_CONFIG";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format {other:?}, expected csv or json")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub tolerance: f64,
    pub n_boundary_samples: usize,
    /// `(nx, ny, nz)`: grid points along x1, x2 and the number of x3 slices.
    pub grid: (usize, usize, usize),
    pub format: Format,
    pub seed: u64,
    /// Half-width of the square `(x1, x2)` window of region scans.
    pub window: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            tolerance: 1e-7,
            n_boundary_samples: 4096,
            grid: (101, 101, 20),
            format: Format::Csv,
            seed: 1,
            window: 0.8,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T, Error> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("invalid value {value:?} for {key}")))
}

/// `"N"` means `N×N` with the default slice count; `"NX,NY,NZ"` sets all three.
pub fn parse_grid(value: &str, slices: usize) -> Result<(usize, usize, usize), Error> {
    let parts: Vec<&str> = value.split(',').map(str::trim).collect();
    match parts.as_slice() {
        [n] => {
            let n = parse_value("grid", n)?;
            Ok((n, n, slices))
        }
        [nx, ny, nz] => Ok((parse_value("grid", nx)?, parse_value("grid", ny)?, parse_value("grid", nz)?)),
        _ => Err(Error::Config(format!("grid must be N or NX,NY,NZ, got {value:?}"))),
    }
}

impl RunConfig {
    pub fn set(&mut self, key: &str, value: &str) -> Result<(), Error> {
        match key {
            "tolerance" => self.tolerance = parse_value(key, value)?,
            "n_boundary_samples" => self.n_boundary_samples = parse_value(key, value)?,
            "grid" => self.grid = parse_grid(value, self.grid.2)?,
            "format" | "output_format" => self.format = value.parse().map_err(Error::Config)?,
            "seed" => self.seed = parse_value(key, value)?,
            "window" => self.window = parse_value(key, value)?,
            _ => return Err(Error::Config(format!("unknown config key {key:?}"))),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<(), Error> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected key = value", lineno + 1)))?;
            self.set(key.trim(), value.trim())?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self, Error> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<(), Error> {
        if !(self.tolerance.is_finite() && self.tolerance > 0.0) {
            return Err(Error::Config(format!("tolerance must be positive, got {}", self.tolerance)));
        }
        let (nx, ny, nz) = self.grid;
        if nx < 2 || ny < 2 || nz < 2 {
            return Err(Error::Config(format!("grid dimensions must be at least 2, got {nx},{ny},{nz}")));
        }
        if self.n_boundary_samples < pg_cubic::region::MIN_SAMPLES {
            return Err(Error::Config(format!(
                "n_boundary_samples must be at least {}, got {}",
                pg_cubic::region::MIN_SAMPLES,
                self.n_boundary_samples
            )));
        }
        if !(self.window.is_finite() && self.window > 0.0) {
            return Err(Error::Config(format!("window must be positive, got {}", self.window)));
        }
        Ok(())
    }

    /// Key/value echo used as output metadata.
    pub fn echo(&self) -> Vec<(&'static str, Value)> {
        let (nx, ny, nz) = self.grid;
        vec![
            ("tolerance", self.tolerance.into()),
            ("n_boundary_samples", self.n_boundary_samples.into()),
            ("grid", format!("{nx}x{ny}x{nz}").into()),
            ("format", self.format.to_string().into()),
            ("seed", Value::UInt(self.seed)),
            ("window", self.window.into()),
        ]
    }
}
