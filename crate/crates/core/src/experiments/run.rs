use std::fs;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use super::config::RunConfig;
use super::ic::make_initial_condition;
use super::io::{snapshot_name, write_snapshot, DiagnosticsRow, DiagnosticsWriter, Snapshot};
use crate::dynamics::SimState;
use crate::error::{Error, Result};
use crate::integrators::integrate;

pub const DIAGNOSTICS_FILE: &str = "diagnostics.csv";
pub const MANIFEST_FILE: &str = "manifest.txt";

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub steps: usize,
    pub final_state: SimState,
    pub last_row: Option<DiagnosticsRow>,
    pub max_abs_energy_drift: f64,
    pub max_abs_casimir2_drift: f64,
    pub snapshots: Vec<PathBuf>,
    pub wall_time: Duration,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Integrates `cfg`, writing `diagnostics.csv`, snapshots and `manifest.txt`
/// into `cfg.out_dir`. The manifest is written on failure too.
pub fn run(cfg: &RunConfig) -> Result<RunSummary> {
    cfg.validate()?;
    let dir = &cfg.out_dir;
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let started = Instant::now();
    let result = run_inner(cfg, dir);
    let wall = started.elapsed();
    write_manifest(cfg, dir, wall, &result)?;
    result.map(|mut s| {
        s.wall_time = wall;
        s
    })
}

fn run_inner(cfg: &RunConfig, dir: &Path) -> Result<RunSummary> {
    let s0 = make_initial_condition(cfg)?;
    let stepper = cfg.stepper()?;
    let mut csv = DiagnosticsWriter::create(&dir.join(DIAGNOSTICS_FILE))?;
    let mut snapshots = Vec::new();
    let mut last_row = None;
    let mut last_step = 0;
    let (mut max_e, mut max_c) = (0.0f64, 0.0f64);
    let every = gcd(cfg.save_every, cfg.diag_every);
    let t_final = cfg.t_final;

    let final_state = integrate(&s0, t_final, &stepper, every, |obs| {
        let is_final = obs.state.t() == t_final;
        last_step = obs.step;
        if obs.step % cfg.diag_every == 0 || is_final {
            let row = csv.push(&obs.diagnostics)?;
            max_e = max_e.max(row.energy_rel_drift.abs());
            max_c = max_c.max(row.casimir2_rel_drift.abs());
            last_row = Some(row);
        }
        if obs.step % cfg.save_every == 0 || is_final {
            let path = dir.join(snapshot_name(obs.step));
            write_snapshot(&path, &Snapshot::from_state(obs.state))?;
            snapshots.push(path);
        }
        Ok(())
    })?;
    csv.finish()?;
    Ok(RunSummary {
        steps: last_step,
        final_state,
        last_row,
        max_abs_energy_drift: max_e,
        max_abs_casimir2_drift: max_c,
        snapshots,
        wall_time: Duration::ZERO,
    })
}

fn write_manifest(cfg: &RunConfig, dir: &Path, wall: Duration, result: &Result<RunSummary>) -> Result<()> {
    let mut text = String::from("# euler-alpha run manifest\n");
    text.push_str(&format!("version = {}\n", env!("CARGO_PKG_VERSION")));
    text.push_str(&format!("wall_time_s = {:.6}\n", wall.as_secs_f64()));
    match result {
        Ok(s) => {
            text.push_str("status = ok\n");
            text.push_str(&format!("steps = {}\n", s.steps));
            text.push_str(&format!("final_t = {:e}\n", s.final_state.t()));
            text.push_str(&format!("max_abs_energy_rel_drift = {:e}\n", s.max_abs_energy_drift));
            text.push_str(&format!("max_abs_casimir2_rel_drift = {:e}\n", s.max_abs_casimir2_drift));
        }
        Err(e) => {
            text.push_str("status = failed\n");
            text.push_str(&format!("error = {e}\n"));
        }
    }
    text.push_str("# configuration\n");
    text.push_str(&cfg.to_text());
    let path = dir.join(MANIFEST_FILE);
    fs::write(&path, text).map_err(|e| Error::io(&path, e))
}
