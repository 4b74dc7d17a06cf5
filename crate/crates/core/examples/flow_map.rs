// Tracks a lattice of markers through a smooth flow and measures how far the
// Jacobian determinant of the discrete flow map is from 1. The exact map is
// volume preserving, so the deviation is the error of the central-difference
// stencil and should fall by about 4 per halving of the marker spacing.
//
//     cargo run --release --example flow_map -- 16 32 64 128

use euler_alpha::dynamics::energy_spectral;
use euler_alpha::experiments::{make_initial_condition, RunConfig};
use euler_alpha::lagrangian::{jacobian_determinant, lagrangian_energy, track_flow_map, ParticleMap};

pub fn run_example(n: usize, markers: &[usize]) -> Result<Vec<f64>, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n,
        alpha: 0.25,
        nu: 0.0,
        dt: 1e-3,
        ..RunConfig::default()
    };
    let s0 = make_initial_condition(&cfg)?;
    let stepper = cfg.stepper()?;
    let mut errors = Vec::new();
    for &m in markers {
        let (pm, s1) = track_flow_map(&s0, &ParticleMap::identity(m)?, 1.0, &stepper, 0.01)?;
        let jac = jacobian_determinant(&pm)?;
        let err = jac.max_deviation();
        let ratio = errors.last().map(|prev: &f64| prev / err).unwrap_or(f64::NAN);
        println!(
            "m = {m:4}  max|det - 1| = {err:.3e}  ratio {ratio:6.3}  degenerate {}  marker energy {:.6} (grid {:.6})",
            jac.degenerate_count(),
            lagrangian_energy(&pm, &s1),
            energy_spectral(s1.q_hat(), s1.alpha())
        );
        errors.push(err);
    }
    Ok(errors)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut markers: Vec<usize> = std::env::args().skip(1).map(|a| a.parse()).collect::<Result<_, _>>()?;
    if markers.is_empty() {
        markers = vec![16, 32, 64];
    }
    run_example(64, &markers)?;
    Ok(())
}
