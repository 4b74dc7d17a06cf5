//! Output files: binary vorticity snapshots and the diagnostics CSV.
//!
//! Snapshot layout (`snap_<step:08>.eaf`), all little-endian:
//!
//! | bytes        | content                                   |
//! |--------------|-------------------------------------------|
//! | 4            | magic `EAF1`                              |
//! | 4            | `u32` grid size `n`                       |
//! | 8 × 3        | `f64` alpha, nu, time                     |
//! | 8 × n²       | `f64` physical ω, row-major, y fastest    |

use std::fs::{self, File};
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use crate::dynamics::{Diagnostics, SimState};
use crate::error::{Error, Result};

pub const SNAPSHOT_MAGIC: &[u8; 4] = b"EAF1";

pub const CSV_HEADER: &str =
    "t,energy,energy_rel_drift,mean_q,casimir2,casimir2_rel_drift,enstrophy,max_u,cfl";

#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub n: u32,
    pub alpha: f64,
    pub nu: f64,
    pub time: f64,
    /// Physical-space vorticity, `n * n` values, y fastest.
    pub omega: Vec<f64>,
}

impl Snapshot {
    pub fn from_state(s: &SimState) -> Snapshot {
        Snapshot {
            n: s.grid().n() as u32,
            alpha: s.alpha(),
            nu: s.nu(),
            time: s.t(),
            omega: s.omega().to_physical().into_values(),
        }
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(32 + 8 * self.omega.len());
        out.extend_from_slice(SNAPSHOT_MAGIC);
        out.extend_from_slice(&self.n.to_le_bytes());
        for v in [self.alpha, self.nu, self.time] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for v in &self.omega {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> std::result::Result<Snapshot, String> {
        if bytes.len() < 32 {
            return Err(format!("truncated header ({} bytes)", bytes.len()));
        }
        if &bytes[..4] != SNAPSHOT_MAGIC {
            return Err("bad magic".into());
        }
        let n = u32::from_le_bytes(bytes[4..8].try_into().unwrap());
        let f = |at: usize| f64::from_le_bytes(bytes[at..at + 8].try_into().unwrap());
        let (alpha, nu, time) = (f(8), f(16), f(24));
        let count = (n as usize) * (n as usize);
        if bytes.len() != 32 + 8 * count {
            return Err(format!(
                "expected {} bytes for n = {n}, found {}",
                32 + 8 * count,
                bytes.len()
            ));
        }
        let omega = bytes[32..]
            .chunks_exact(8)
            .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        Ok(Snapshot {
            n,
            alpha,
            nu,
            time,
            omega,
        })
    }
}

pub fn snapshot_name(step: usize) -> String {
    format!("snap_{step:08}.eaf")
}

pub fn write_snapshot(path: &Path, snap: &Snapshot) -> Result<()> {
    fs::write(path, snap.to_bytes()).map_err(|e| Error::io(path, e))
}

pub fn read_snapshot(path: &Path) -> Result<Snapshot> {
    let mut bytes = Vec::new();
    File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    Snapshot::from_bytes(&bytes).map_err(|reason| Error::Format {
        path: path.to_path_buf(),
        reason,
    })
}

/// One CSV row: diagnostics plus drifts relative to the first row.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiagnosticsRow {
    pub t: f64,
    pub energy: f64,
    pub energy_rel_drift: f64,
    pub mean_q: f64,
    pub casimir2: f64,
    pub casimir2_rel_drift: f64,
    pub enstrophy: f64,
    pub max_u: f64,
    pub cfl: f64,
}

fn rel_drift(v: f64, v0: f64) -> f64 {
    if v0 == 0.0 {
        0.0
    } else {
        (v - v0) / v0
    }
}

impl DiagnosticsRow {
    pub fn new(d: &Diagnostics, initial: &Diagnostics) -> Self {
        DiagnosticsRow {
            t: d.t,
            energy: d.energy,
            energy_rel_drift: rel_drift(d.energy, initial.energy),
            mean_q: d.mean_q,
            casimir2: d.casimir2,
            casimir2_rel_drift: rel_drift(d.casimir2, initial.casimir2),
            enstrophy: d.enstrophy,
            max_u: d.max_u,
            cfl: d.cfl,
        }
    }

    fn fields(&self) -> [f64; 9] {
        [
            self.t,
            self.energy,
            self.energy_rel_drift,
            self.mean_q,
            self.casimir2,
            self.casimir2_rel_drift,
            self.enstrophy,
            self.max_u,
            self.cfl,
        ]
    }

    /// Shortest round-trip formatting, so reading back is bit-exact.
    pub fn to_csv_line(&self) -> String {
        self.fields().iter().map(|v| format!("{v:e}")).collect::<Vec<_>>().join(",")
    }

    pub fn parse_csv_line(line: &str) -> std::result::Result<Self, String> {
        let vals: Vec<f64> = line
            .split(',')
            .map(|s| s.trim().parse::<f64>().map_err(|e| format!("'{s}': {e}")))
            .collect::<std::result::Result<_, _>>()?;
        if vals.len() != 9 {
            return Err(format!("expected 9 columns, found {}", vals.len()));
        }
        Ok(DiagnosticsRow {
            t: vals[0],
            energy: vals[1],
            energy_rel_drift: vals[2],
            mean_q: vals[3],
            casimir2: vals[4],
            casimir2_rel_drift: vals[5],
            enstrophy: vals[6],
            max_u: vals[7],
            cfl: vals[8],
        })
    }
}

/// Streams diagnostics rows to a CSV file.
pub struct DiagnosticsWriter {
    path: PathBuf,
    out: BufWriter<File>,
    initial: Option<Diagnostics>,
}

impl DiagnosticsWriter {
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path).map_err(|e| Error::io(path, e))?;
        let mut out = BufWriter::new(file);
        writeln!(out, "{CSV_HEADER}").map_err(|e| Error::io(path, e))?;
        Ok(DiagnosticsWriter {
            path: path.to_path_buf(),
            out,
            initial: None,
        })
    }

    pub fn push(&mut self, d: &Diagnostics) -> Result<DiagnosticsRow> {
        let initial = *self.initial.get_or_insert(*d);
        let row = DiagnosticsRow::new(d, &initial);
        writeln!(self.out, "{}", row.to_csv_line()).map_err(|e| Error::io(&self.path, e))?;
        Ok(row)
    }

    pub fn finish(mut self) -> Result<()> {
        self.out.flush().map_err(|e| Error::io(&self.path, e))
    }
}

pub fn read_diagnostics_csv(path: &Path) -> Result<Vec<DiagnosticsRow>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    let bad = |reason: String| Error::Format {
        path: path.to_path_buf(),
        reason,
    };
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        if i == 0 {
            if line.trim() != CSV_HEADER {
                return Err(bad(format!("unexpected header '{line}'")));
            }
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        rows.push(DiagnosticsRow::parse_csv_line(&line).map_err(|e| bad(format!("line {}: {e}", i + 1)))?);
    }
    Ok(rows)
}
