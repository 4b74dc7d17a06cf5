use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::integrators::{Scheme, StepperConfig, DEFAULT_CFL_LIMIT};
use crate::spectral::TorusGrid;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IcKind {
    SingleMode,
    TaylorGreen,
    RandomBandlimited,
}

impl IcKind {
    pub fn as_str(self) -> &'static str {
        match self {
            IcKind::SingleMode => "single_mode",
            IcKind::TaylorGreen => "taylor_green",
            IcKind::RandomBandlimited => "random_bandlimited",
        }
    }
}

impl fmt::Display for IcKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IcKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single_mode" => Ok(IcKind::SingleMode),
            "taylor_green" => Ok(IcKind::TaylorGreen),
            "random_bandlimited" => Ok(IcKind::RandomBandlimited),
            other => Err(Error::Config(format!("unknown initial condition '{other}'"))),
        }
    }
}

/// Every knob of a run. Text form is flat `key = value` lines with `#`
/// comments; the CLI exposes the same keys as `--kebab-case` flags.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub n: usize,
    pub alpha: f64,
    pub nu: f64,
    pub dt: f64,
    pub t_final: f64,
    pub scheme: Scheme,
    pub cfl_limit: f64,
    pub ic: IcKind,
    /// Wavevector of the `single_mode` initial vorticity.
    pub mode_kx: i64,
    pub mode_ky: i64,
    /// `random_bandlimited` fills `1 <= |k|∞ <= band`.
    pub band: i64,
    /// Vorticity amplitude for `single_mode` and `taylor_green`.
    pub amplitude: f64,
    /// Target energy of `random_bandlimited`.
    pub energy: f64,
    pub seed: u64,
    pub out_dir: PathBuf,
    pub save_every: usize,
    pub diag_every: usize,
    pub workers: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            n: 64,
            alpha: 0.25,
            nu: 0.0,
            dt: 1e-3,
            t_final: 1.0,
            scheme: Scheme::Rk4,
            cfl_limit: DEFAULT_CFL_LIMIT,
            ic: IcKind::RandomBandlimited,
            mode_kx: 2,
            mode_ky: 0,
            band: 4,
            amplitude: 1.0,
            energy: 1.0,
            seed: 42,
            out_dir: PathBuf::from("out"),
            save_every: 100,
            diag_every: 10,
            workers: 1,
        }
    }
}

pub const KEYS: &[&str] = &[
    "n",
    "alpha",
    "nu",
    "dt",
    "t_final",
    "scheme",
    "cfl_limit",
    "ic",
    "mode_kx",
    "mode_ky",
    "band",
    "amplitude",
    "energy",
    "seed",
    "out",
    "save_every",
    "diag_every",
    "workers",
];

fn parse<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::Config(format!("cannot parse value '{value}' for key '{key}'")))
}

impl RunConfig {
    /// Sets one key; `-` in the key is read as `_`.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let key = key.trim().replace('-', "_");
        let value = value.trim();
        match key.as_str() {
            "n" => self.n = parse(&key, value)?,
            "alpha" => self.alpha = parse(&key, value)?,
            "nu" => self.nu = parse(&key, value)?,
            "dt" => self.dt = parse(&key, value)?,
            "t_final" => self.t_final = parse(&key, value)?,
            "scheme" => self.scheme = value.parse()?,
            "cfl_limit" => self.cfl_limit = parse(&key, value)?,
            "ic" => self.ic = value.parse()?,
            "mode_kx" => self.mode_kx = parse(&key, value)?,
            "mode_ky" => self.mode_ky = parse(&key, value)?,
            "band" => self.band = parse(&key, value)?,
            "amplitude" => self.amplitude = parse(&key, value)?,
            "energy" => self.energy = parse(&key, value)?,
            "seed" => self.seed = parse(&key, value)?,
            "out" | "out_dir" => self.out_dir = PathBuf::from(value),
            "save_every" => self.save_every = parse(&key, value)?,
            "diag_every" => self.diag_every = parse(&key, value)?,
            "workers" => self.workers = parse(&key, value)?,
            other => return Err(Error::Config(format!("unknown key '{other}'"))),
        }
        Ok(())
    }

    /// Applies `key = value` lines on top of `self`.
    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                Error::Config(format!("line {}: expected key = value, got '{raw}'", lineno + 1))
            })?;
            self.set(k, v)?;
        }
        Ok(())
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut cfg = RunConfig::default();
        cfg.apply_text(text)?;
        Ok(cfg)
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        RunConfig::from_text(&text)
    }

    /// Canonical `key = value` text; parsing it reproduces `self`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for key in KEYS {
            s.push_str(key);
            s.push_str(" = ");
            s.push_str(&self.value_of(key));
            s.push('\n');
        }
        s
    }

    fn value_of(&self, key: &str) -> String {
        match key {
            "n" => self.n.to_string(),
            "alpha" => self.alpha.to_string(),
            "nu" => self.nu.to_string(),
            "dt" => self.dt.to_string(),
            "t_final" => self.t_final.to_string(),
            "scheme" => self.scheme.to_string(),
            "cfl_limit" => self.cfl_limit.to_string(),
            "ic" => self.ic.to_string(),
            "mode_kx" => self.mode_kx.to_string(),
            "mode_ky" => self.mode_ky.to_string(),
            "band" => self.band.to_string(),
            "amplitude" => self.amplitude.to_string(),
            "energy" => self.energy.to_string(),
            "seed" => self.seed.to_string(),
            "out" => self.out_dir.display().to_string(),
            "save_every" => self.save_every.to_string(),
            "diag_every" => self.diag_every.to_string(),
            "workers" => self.workers.to_string(),
            _ => unreachable!("key list and match arms diverged"),
        }
    }

    pub fn validate(&self) -> Result<()> {
        TorusGrid::new(self.n).map_err(|e| Error::Config(e.to_string()))?;
        let finite = [
            ("alpha", self.alpha),
            ("nu", self.nu),
            ("dt", self.dt),
            ("t_final", self.t_final),
            ("cfl_limit", self.cfl_limit),
            ("amplitude", self.amplitude),
            ("energy", self.energy),
        ];
        for (k, v) in finite {
            if !v.is_finite() {
                return Err(Error::Config(format!("{k} must be finite, got {v}")));
            }
        }
        if self.alpha < 0.0 || self.nu < 0.0 {
            return Err(Error::Config("alpha and nu must be >= 0".into()));
        }
        if self.t_final < 0.0 {
            return Err(Error::Config("t_final must be >= 0".into()));
        }
        if self.energy < 0.0 {
            return Err(Error::Config("energy must be >= 0".into()));
        }
        if self.save_every == 0 || self.diag_every == 0 {
            return Err(Error::Config("save_every and diag_every must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(Error::Config("workers must be >= 1".into()));
        }
        self.stepper()?;
        Ok(())
    }

    pub fn stepper(&self) -> Result<StepperConfig> {
        StepperConfig::with_cfl_limit(self.dt, self.scheme, self.cfl_limit).map_err(|e| Error::Config(e.to_string()))
    }
}
