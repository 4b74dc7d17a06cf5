// A single Fourier shell is a steady solution of the inviscid equations, so
// with viscosity it decays at exactly exp(-nu k^2 t / (1 + alpha^2 k^2)).
// Each scheme is compared against that closed form.
//
//     cargo run --release --example single_mode_decay

use euler_alpha::experiments::{make_initial_condition, IcKind, RunConfig};
use euler_alpha::{integrate, Scheme, StepperConfig};

pub fn run_example() -> Result<Vec<(Scheme, f64)>, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n: 32,
        alpha: 0.5,
        nu: 0.01,
        ic: IcKind::SingleMode,
        mode_kx: 2,
        mode_ky: 0,
        ..RunConfig::default()
    };
    let s0 = make_initial_condition(&cfg)?;
    let k2 = 4.0;
    let exact = (-cfg.nu * k2 / (1.0 + cfg.alpha * cfg.alpha * k2)).exp();
    let scale = (cfg.n * cfg.n) as f64 / 2.0;

    let mut errors = Vec::new();
    for scheme in [Scheme::Rk4, Scheme::LieTrotter, Scheme::Strang] {
        let stepper = StepperConfig::new(0.01, scheme)?;
        let s = integrate(&s0, 1.0, &stepper, usize::MAX, |_| Ok(()))?;
        let amplitude = s.omega().coeff(2, 0).re / scale;
        let err = (amplitude - exact).abs() / exact;
        println!("{scheme:>12}: amplitude {amplitude:.15} (exact {exact:.15}), rel err {err:.2e}");
        errors.push((scheme, err));
    }
    Ok(errors)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
