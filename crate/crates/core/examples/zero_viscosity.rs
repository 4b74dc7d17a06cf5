// Viscous runs approach the inviscid one as nu -> 0. Prints the L2 distance
// in q and the H1_alpha distance in u at t_final for each nu, and the fitted
// log-log slope (an empirical rate, close to 1 for smooth flows).
//
//     cargo run --release --example zero_viscosity -- 64

use euler_alpha::experiments::{sweep_nu, RunConfig, SweepResult};

pub fn run_example(n: usize) -> Result<SweepResult, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n,
        alpha: 0.25,
        dt: 1e-3,
        t_final: 1.0,
        ..RunConfig::default()
    };
    let r = sweep_nu(&cfg, &[1e-2, 5e-3, 2.5e-3, 1.25e-3])?;
    for ((nu, dq), du) in r.values.iter().zip(&r.distances_q).zip(&r.distances_u) {
        println!("nu = {nu:.3e}  |q - q0| = {dq:.4e}  |u - u0|_H1a = {du:.4e}");
    }
    print!("{}", r.summary());
    Ok(r)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(64);
    run_example(n)?;
    Ok(())
}
