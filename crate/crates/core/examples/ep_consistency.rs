// The velocity (Euler-Poincare) form and the vorticity form are two routes to
// the same tendency. Taking the curl of (1 - alpha^2 Lap)(-ad*_u u) should
// reproduce -u . grad q up to roundoff.
//
//     cargo run --release --example ep_consistency

use euler_alpha::dynamics::{ad_star, advection, velocity_form_q_tendency};
use euler_alpha::experiments::{make_initial_condition, RunConfig};

pub fn run_example() -> Result<f64, Box<dyn std::error::Error>> {
    let mut worst: f64 = 0.0;
    for alpha in [0.0, 0.25, 1.0] {
        for seed in 0..5 {
            let cfg = RunConfig {
                n: 48,
                alpha,
                seed,
                ..RunConfig::default()
            };
            let s = make_initial_condition(&cfg)?;
            let via_velocity = velocity_form_q_tendency(&s);
            let via_vorticity = advection(s.q_hat(), alpha).scale(-1.0);
            let rel = via_velocity.sub(&via_vorticity).l2_norm() / via_vorticity.l2_norm();
            let a = ad_star(&s);
            let div = a.divergence().inverse_transform()?.max_abs();
            println!("alpha = {alpha:4}  seed = {seed}  mismatch {rel:.2e}  max|div ad*| {div:.2e}");
            worst = worst.max(rel);
        }
    }
    Ok(worst)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("worst mismatch {:.2e}", run_example()?);
    Ok(())
}
