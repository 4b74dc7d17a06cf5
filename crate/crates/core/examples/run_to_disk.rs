// Drives a full run from a configuration text, then reads the diagnostics
// CSV and the last snapshot back.
//
//     cargo run --release --example run_to_disk -- /tmp/euler-alpha-run

use std::path::Path;

use euler_alpha::experiments::{read_diagnostics_csv, read_snapshot, run, RunConfig};

const CONFIG: &str = "
# taylor-green vortex with mild viscosity
n = 32
alpha = 0.1
nu = 0.01
dt = 0.01
t_final = 1.0
scheme = strang
ic = taylor_green
save_every = 25
diag_every = 10
";

pub fn run_example(out: &Path) -> Result<usize, Box<dyn std::error::Error>> {
    let mut cfg = RunConfig::from_text(CONFIG)?;
    cfg.out_dir = out.to_path_buf();
    let summary = run(&cfg)?;
    println!("{} steps in {:.3}s", summary.steps, summary.wall_time.as_secs_f64());

    let rows = read_diagnostics_csv(&out.join("diagnostics.csv"))?;
    for r in &rows {
        println!("t = {:4.2}  energy = {:.6}  max|u| = {:.4}", r.t, r.energy, r.max_u);
    }
    let last = read_snapshot(summary.snapshots.last().ok_or("no snapshots written")?)?;
    println!(
        "{} snapshots; last at t = {} holds {} values on a {}x{} grid",
        summary.snapshots.len(),
        last.time,
        last.omega.len(),
        last.n,
        last.n
    );
    Ok(rows.len())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "out/run_to_disk".into());
    run_example(Path::new(&out))?;
    Ok(())
}
