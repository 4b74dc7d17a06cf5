// Inviscid run from a random band-limited state. The truncated system keeps
// the energy and the integral of q^2 exactly, so the printed drifts only
// show RK4 truncation error.
//
//     cargo run --release --example conservation -- 64 5.0

use euler_alpha::experiments::{make_initial_condition, RunConfig};
use euler_alpha::integrate;

pub struct Drift {
    pub energy: f64,
    pub casimir2: f64,
    pub max_abs_mean_q: f64,
}

pub fn run_example(n: usize, t_final: f64) -> Result<Drift, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n,
        alpha: 0.25,
        nu: 0.0,
        dt: 1e-3,
        ..RunConfig::default()
    };
    let s0 = make_initial_condition(&cfg)?;
    let mut initial = None;
    let mut drift = Drift {
        energy: 0.0,
        casimir2: 0.0,
        max_abs_mean_q: 0.0,
    };
    let every = (t_final / cfg.dt / 10.0).ceil().max(1.0) as usize;
    integrate(&s0, t_final, &cfg.stepper()?, every, |obs| {
        let d = obs.diagnostics;
        let d0 = *initial.get_or_insert(d);
        let de = (d.energy - d0.energy) / d0.energy;
        let dc = (d.casimir2 - d0.casimir2) / d0.casimir2;
        println!(
            "t = {:5.2}  E = {:.15}  dE/E = {de:+.2e}  dC2/C2 = {dc:+.2e}  max|u| = {:.3}",
            d.t, d.energy, d.max_u
        );
        drift.energy = drift.energy.max(de.abs());
        drift.casimir2 = drift.casimir2.max(dc.abs());
        drift.max_abs_mean_q = drift.max_abs_mean_q.max(d.mean_q.abs());
        Ok(())
    })?;
    Ok(drift)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map(|a| a.parse()).transpose()?.unwrap_or(64);
    let t = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(5.0);
    let d = run_example(n, t)?;
    println!("max drifts: energy {:.2e}, casimir2 {:.2e}", d.energy, d.casimir2);
    Ok(())
}
