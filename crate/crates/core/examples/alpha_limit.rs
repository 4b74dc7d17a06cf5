// As alpha -> 0 the averaged equations reduce to classical Euler. All runs
// share one initial vorticity; the distance to the alpha = 0 run shrinks
// roughly like alpha^2.
//
//     cargo run --release --example alpha_limit -- 64

use euler_alpha::experiments::{sweep_alpha, RunConfig, SweepResult};

pub fn run_example(n: usize) -> Result<SweepResult, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n,
        nu: 0.0,
        dt: 1e-3,
        t_final: 1.0,
        ..RunConfig::default()
    };
    let r = sweep_alpha(&cfg, &[0.4, 0.2, 0.1, 0.05])?;
    for ((a, dq), du) in r.values.iter().zip(&r.distances_q).zip(&r.distances_u) {
        println!("alpha = {a:.3}  |q - q_euler| = {dq:.4e}  |u - u_euler|_H1a = {du:.4e}");
    }
    print!("{}", r.summary());
    Ok(r)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(64);
    run_example(n)?;
    Ok(())
}
