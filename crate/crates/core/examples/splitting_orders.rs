// Observed convergence orders of the product formulas (diffusion semigroup
// composed with inviscid RK4) and of plain RK4, measured against a fine RK4
// reference.
//
//     cargo run --release --example splitting_orders

use euler_alpha::experiments::{splitting_order_study, RunConfig, SplittingStudy};

pub fn run_example() -> Result<SplittingStudy, Box<dyn std::error::Error>> {
    let cfg = RunConfig {
        n: 32,
        alpha: 0.25,
        nu: 0.05,
        t_final: 0.5,
        ..RunConfig::default()
    };
    let dts = [0.05, 0.025, 0.0125, 0.00625];
    let study = splitting_order_study(&cfg, &dts)?;
    println!("{:>10} {:>12} {:>12} {:>12}", "dt", "lie-trotter", "strang", "rk4");
    for (i, dt) in dts.iter().enumerate() {
        println!(
            "{dt:>10} {:>12.3e} {:>12.3e} {:>12.3e}",
            study.lie_trotter.distances_q[i], study.strang.distances_q[i], study.rk4.distances_q[i]
        );
    }
    print!("{}", study.summary());
    Ok(study)
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()?;
    Ok(())
}
