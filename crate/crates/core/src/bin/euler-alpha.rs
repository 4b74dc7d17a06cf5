//! Command-line front end over `euler_alpha::experiments`.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use euler_alpha::experiments::{run, run_checks, splitting_order_study, sweep_alpha, sweep_nu, RunConfig, SweepResult};
use euler_alpha::{Error, Result};

#[derive(Parser)]
#[command(name = "euler-alpha", version, about = "Pseudospectral Euler-alpha solver on the periodic torus")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Integrate one configuration, writing diagnostics.csv, snapshots and a manifest.
    Run(Overrides),
    /// Distance of viscous runs to the inviscid one at t_final.
    SweepNu(SweepArgs),
    /// Distance of runs at each alpha to classical Euler at t_final.
    SweepAlpha(SweepArgs),
    /// Observed orders of Lie-Trotter, Strang and RK4 over dyadic time steps.
    SplittingOrder(SweepArgs),
    /// Run the fast invariant checks.
    Check(Overrides),
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated parameter values.
    #[arg(long, value_delimiter = ',', required = true, num_args = 1..)]
    values: Vec<f64>,
    #[command(flatten)]
    overrides: Overrides,
}

#[derive(Args)]
struct Overrides {
    /// Key = value configuration file; flags override its entries.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    n: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    nu: Option<String>,
    #[arg(long)]
    dt: Option<String>,
    #[arg(long)]
    t_final: Option<String>,
    #[arg(long)]
    scheme: Option<String>,
    #[arg(long)]
    cfl_limit: Option<String>,
    #[arg(long)]
    ic: Option<String>,
    #[arg(long)]
    mode_kx: Option<String>,
    #[arg(long)]
    mode_ky: Option<String>,
    #[arg(long)]
    band: Option<String>,
    #[arg(long)]
    amplitude: Option<String>,
    #[arg(long)]
    energy: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    save_every: Option<String>,
    #[arg(long)]
    diag_every: Option<String>,
    #[arg(long)]
    workers: Option<String>,
}

impl Overrides {
    fn resolve(&self) -> Result<RunConfig> {
        let mut cfg = match &self.config {
            Some(path) => RunConfig::from_file(path)?,
            None => RunConfig::default(),
        };
        let flags = [
            ("n", &self.n),
            ("alpha", &self.alpha),
            ("nu", &self.nu),
            ("dt", &self.dt),
            ("t_final", &self.t_final),
            ("scheme", &self.scheme),
            ("cfl_limit", &self.cfl_limit),
            ("ic", &self.ic),
            ("mode_kx", &self.mode_kx),
            ("mode_ky", &self.mode_ky),
            ("band", &self.band),
            ("amplitude", &self.amplitude),
            ("energy", &self.energy),
            ("seed", &self.seed),
            ("out", &self.out),
            ("save_every", &self.save_every),
            ("diag_every", &self.diag_every),
            ("workers", &self.workers),
        ];
        for (key, value) in flags {
            if let Some(v) = value {
                cfg.set(key, v)?;
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

fn write_out(cfg: &RunConfig, name: &str, text: &str) -> Result<()> {
    fs::create_dir_all(&cfg.out_dir).map_err(|e| Error::Io {
        path: cfg.out_dir.clone(),
        source: e,
    })?;
    let path = cfg.out_dir.join(name);
    fs::write(&path, text).map_err(|e| Error::Io { path, source: e })
}

fn write_sweep(cfg: &RunConfig, stem: &str, r: &SweepResult) -> Result<()> {
    write_out(cfg, &format!("{stem}.csv"), &r.to_csv())?;
    write_out(cfg, &format!("{stem}_summary.txt"), &r.summary())?;
    print!("{}", r.summary());
    Ok(())
}

fn execute(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Run(o) => {
            let cfg = o.resolve()?;
            let s = run(&cfg)?;
            println!(
                "{} steps to t = {} in {:.2}s; max |energy drift| {:.3e}, max |casimir2 drift| {:.3e}",
                s.steps,
                s.final_state.t(),
                s.wall_time.as_secs_f64(),
                s.max_abs_energy_drift,
                s.max_abs_casimir2_drift
            );
        }
        Command::SweepNu(a) => {
            let cfg = a.overrides.resolve()?;
            write_sweep(&cfg, "sweep_nu", &sweep_nu(&cfg, &a.values)?)?;
        }
        Command::SweepAlpha(a) => {
            let cfg = a.overrides.resolve()?;
            write_sweep(&cfg, "sweep_alpha", &sweep_alpha(&cfg, &a.values)?)?;
        }
        Command::SplittingOrder(a) => {
            let cfg = a.overrides.resolve()?;
            let study = splitting_order_study(&cfg, &a.values)?;
            write_out(&cfg, "splitting_lie_trotter.csv", &study.lie_trotter.to_csv())?;
            write_out(&cfg, "splitting_strang.csv", &study.strang.to_csv())?;
            write_out(&cfg, "splitting_rk4.csv", &study.rk4.to_csv())?;
            write_out(&cfg, "splitting_summary.txt", &study.summary())?;
            print!("{}", study.summary());
        }
        Command::Check(o) => {
            let cfg = o.resolve()?;
            let outcomes = run_checks(&cfg)?;
            for c in &outcomes {
                println!("{c}");
            }
            let failed = outcomes.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                eprintln!("{failed} checks failed");
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
