// Without viscosity the dynamics are reversible: negate q, integrate for the
// same time and negate again to land back on the initial state.
//
//     cargo run --release --example time_reversal -- 64 2.0

use euler_alpha::experiments::{make_initial_condition, RunConfig};
use euler_alpha::integrate;

pub fn run_example(n: usize, t_final: f64) -> Result<f64, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n,
        alpha: 0.25,
        nu: 0.0,
        dt: 1e-3,
        ..RunConfig::default()
    };
    let s0 = make_initial_condition(&cfg)?;
    let stepper = cfg.stepper()?;
    let forward = integrate(&s0, t_final, &stepper, usize::MAX, |_| Ok(()))?;
    let back = integrate(&forward.reversed().with_time(0.0), t_final, &stepper, usize::MAX, |_| Ok(()))?.reversed();
    let moved = forward.q_hat().sub(s0.q_hat()).l2_norm() / s0.q_hat().l2_norm();
    let err = back.q_hat().sub(s0.q_hat()).l2_norm() / s0.q_hat().l2_norm();
    println!("relative change at t = {t_final}: {moved:.3e}");
    println!("relative error after returning: {err:.3e}");
    Ok(err)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = args.first().map(|a| a.parse()).transpose()?.unwrap_or(64);
    let t = args.get(1).map(|a| a.parse()).transpose()?.unwrap_or(2.0);
    run_example(n, t)?;
    Ok(())
}
