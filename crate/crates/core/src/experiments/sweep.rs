//! Parameter sweeps: vanishing viscosity, vanishing α, and observed orders of
//! the product-formula steppers.
//!
//! Fitted slopes are empirical rates measured by this code. Convergence as
//! `ν → 0` is a theorem; the rate is not.

use rayon::prelude::*;

use super::config::RunConfig;
use super::ic::{initial_vorticity, make_initial_condition};
use crate::dynamics::{velocity_spectral, SimState};
use crate::error::{Error, Result};
use crate::integrators::{integrate, Scheme, StepperConfig};
use crate::spectral::{SpectralField, TorusGrid};

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PowerLawFit {
    pub slope: f64,
    pub intercept: f64,
    /// Root-mean-square residual of the fit in natural-log units.
    pub residual: f64,
}

/// Fits `y ≈ C x^p`. Needs at least two points with positive `x` and `y`.
pub fn fit_power_law(xs: &[f64], ys: &[f64]) -> Option<PowerLawFit> {
    if xs.len() != ys.len() || xs.len() < 2 || xs.iter().chain(ys).any(|v| !(*v > 0.0) || !v.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxx: f64 = lx.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss: f64 = lx.iter().zip(&ly).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    Some(PowerLawFit {
        slope,
        intercept,
        residual: (ss / n).sqrt(),
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub parameter: &'static str,
    pub values: Vec<f64>,
    /// `‖q(t) - q_ref(t)‖_{L²}`.
    pub distances_q: Vec<f64>,
    /// `‖u(t) - u_ref(t)‖_{H¹_α}`.
    pub distances_u: Vec<f64>,
    /// Fit of `ln distances_q` against `ln values`; absent when fewer than two
    /// positive points exist.
    pub fit: Option<PowerLawFit>,
}

impl SweepResult {
    fn new(parameter: &'static str, values: Vec<f64>, distances_q: Vec<f64>, distances_u: Vec<f64>) -> Self {
        let fit = fit_power_law(&values, &distances_q);
        SweepResult {
            parameter,
            values,
            distances_q,
            distances_u,
            fit,
        }
    }

    /// `true` when the q-distance strictly decreases along `values`.
    pub fn strictly_decreasing(&self) -> bool {
        self.distances_q.windows(2).all(|w| w[1] < w[0])
    }

    pub fn to_csv(&self) -> String {
        let mut s = format!("{},distance_q_l2,distance_u_h1alpha\n", self.parameter);
        for ((v, dq), du) in self.values.iter().zip(&self.distances_q).zip(&self.distances_u) {
            s.push_str(&format!("{v:e},{dq:e},{du:e}\n"));
        }
        s
    }

    pub fn summary(&self) -> String {
        match self.fit {
            Some(f) => format!(
                "parameter = {}\nslope = {:.6}\nresidual = {:.3e}\nintercept = {:.6}\nnote = empirical rate\n",
                self.parameter, f.slope, f.residual, f.intercept
            ),
            None => format!("parameter = {}\nslope = none\nresidual = none\n", self.parameter),
        }
    }
}

/// `‖u_a - u_b‖` in the norm `(∫|w|² + α²|∇w|²)^{1/2}`.
pub fn h1_alpha_distance(a: &SimState, b: &SimState, alpha: f64) -> f64 {
    let (ax, ay) = velocity_spectral(a.q_hat(), a.alpha());
    let (bx, by) = velocity_spectral(b.q_hat(), b.alpha());
    let (dx, dy) = (ax.sub(&bx), ay.sub(&by));
    let sq = |w: &SpectralField| w.inner(&w.helmholtz(alpha));
    (sq(&dx) + sq(&dy)).max(0.0).sqrt()
}

fn pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))
}

fn evolve(s0: &SimState, t_final: f64, stepper: &StepperConfig) -> Result<SimState> {
    integrate(s0, t_final, stepper, usize::MAX, |_| Ok(()))
}

fn run_members(
    parameter: &'static str,
    values: &[f64],
    workers: usize,
    member: impl Fn(f64) -> Result<SimState> + Sync,
) -> Result<Vec<SimState>> {
    let results: Vec<Result<SimState>> = pool(workers)?.install(|| values.par_iter().map(|&v| member(v)).collect());
    values
        .iter()
        .zip(results)
        .map(|(&value, r)| {
            r.map_err(|e| Error::SweepMember {
                param: parameter,
                value,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Distance of the viscous solutions from the inviscid one at `cfg.t_final`.
pub fn sweep_nu(cfg: &RunConfig, nu_list: &[f64]) -> Result<SweepResult> {
    if nu_list.is_empty() || nu_list.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
        return Err(Error::Config("nu_list must contain positive finite values".into()));
    }
    if nu_list.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::Config("nu_list must be strictly descending".into()));
    }
    let s0 = make_initial_condition(cfg)?.with_nu(0.0);
    let stepper = cfg.stepper()?;
    let reference = evolve(&s0, cfg.t_final, &stepper).map_err(|e| Error::SweepMember {
        param: "nu",
        value: 0.0,
        source: Box::new(e),
    })?;
    let members = run_members("nu", nu_list, cfg.workers, |nu| evolve(&s0.with_nu(nu), cfg.t_final, &stepper))?;
    let dq = members.iter().map(|s| s.q_hat().sub(reference.q_hat()).l2_norm()).collect();
    let du = members.iter().map(|s| h1_alpha_distance(s, &reference, cfg.alpha)).collect();
    Ok(SweepResult::new("nu", nu_list.to_vec(), dq, du))
}

/// Distance of the Euler-α solutions from classical Euler (α = 0), all
/// started from the same initial vorticity and with `ν = 0`.
///
/// The shared `ω₀` is normalized in the α = 0 metric, so every member starts
/// from the identical velocity field.
pub fn sweep_alpha(cfg: &RunConfig, alpha_list: &[f64]) -> Result<SweepResult> {
    if alpha_list.is_empty() || alpha_list.iter().any(|&a| !(a >= 0.0) || !a.is_finite()) {
        return Err(Error::Config("alpha_list must contain finite values >= 0".into()));
    }
    cfg.validate()?;
    let grid = TorusGrid::new(cfg.n)?;
    let base = RunConfig {
        alpha: 0.0,
        ..cfg.clone()
    };
    let omega0 = initial_vorticity(&base, &grid)?;
    let stepper = cfg.stepper()?;
    let start = |alpha: f64| SimState::from_omega(&omega0, alpha, 0.0, 0.0);
    let reference = evolve(&start(0.0)?, cfg.t_final, &stepper).map_err(|e| Error::SweepMember {
        param: "alpha",
        value: 0.0,
        source: Box::new(e),
    })?;
    let members = run_members("alpha", alpha_list, cfg.workers, |a| evolve(&start(a)?, cfg.t_final, &stepper))?;
    let dq = members.iter().map(|s| s.q_hat().sub(reference.q_hat()).l2_norm()).collect();
    let du = members
        .iter()
        .zip(alpha_list)
        .map(|(s, &a)| h1_alpha_distance(s, &reference, a))
        .collect();
    Ok(SweepResult::new("alpha", alpha_list.to_vec(), dq, du))
}

/// Errors of each scheme against a fine RK4 reference.
#[derive(Debug, Clone, PartialEq)]
pub struct SplittingStudy {
    pub reference_dt: f64,
    pub lie_trotter: SweepResult,
    pub strang: SweepResult,
    pub rk4: SweepResult,
}

impl SplittingStudy {
    pub fn summary(&self) -> String {
        let line = |name: &str, r: &SweepResult| match r.fit {
            Some(f) => format!("{name}_order = {:.4}\n{name}_residual = {:.3e}\n", f.slope, f.residual),
            None => format!("{name}_order = none\n{name}_residual = none\n"),
        };
        format!(
            "reference_dt = {:e}\n{}{}{}",
            self.reference_dt,
            line("lie_trotter", &self.lie_trotter),
            line("strang", &self.strang),
            line("rk4", &self.rk4)
        )
    }
}

/// `dt_list` must halve at every entry. The reference is RK4 at
/// `min(dt_list) / 16`.
pub fn splitting_order_study(cfg: &RunConfig, dt_list: &[f64]) -> Result<SplittingStudy> {
    if dt_list.len() < 2 || dt_list.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
        return Err(Error::Config("dt_list needs at least two positive values".into()));
    }
    if dt_list.windows(2).any(|w| ((w[0] / w[1]) - 2.0).abs() > 1e-9) {
        return Err(Error::Config("dt_list must be dyadic and descending".into()));
    }
    let s0 = make_initial_condition(cfg)?;
    let reference_dt = dt_list[dt_list.len() - 1] / 16.0;
    let reference = evolve(
        &s0,
        cfg.t_final,
        &StepperConfig::with_cfl_limit(reference_dt, Scheme::Rk4, cfg.cfl_limit)?,
    )
    .map_err(|e| Error::SweepMember {
        param: "dt",
        value: reference_dt,
        source: Box::new(e),
    })?;

    let schemes = [Scheme::LieTrotter, Scheme::Strang, Scheme::Rk4];
    let jobs: Vec<(Scheme, f64)> = schemes
        .iter()
        .flat_map(|&sc| dt_list.iter().map(move |&dt| (sc, dt)))
        .collect();
    let results: Vec<Result<SimState>> = pool(cfg.workers)?.install(|| {
        jobs.par_iter()
            .map(|&(sc, dt)| evolve(&s0, cfg.t_final, &StepperConfig::with_cfl_limit(dt, sc, cfg.cfl_limit)?))
            .collect()
    });
    let mut finals = Vec::with_capacity(jobs.len());
    for (&(_, dt), r) in jobs.iter().zip(results) {
        finals.push(r.map_err(|e| Error::SweepMember {
            param: "dt",
            value: dt,
            source: Box::new(e),
        })?);
    }
    let k = dt_list.len();
    let result = |i: usize| {
        let chunk = &finals[i * k..(i + 1) * k];
        let dq = chunk.iter().map(|s| s.q_hat().sub(reference.q_hat()).l2_norm()).collect();
        let du = chunk.iter().map(|s| h1_alpha_distance(s, &reference, cfg.alpha)).collect();
        SweepResult::new("dt", dt_list.to_vec(), dq, du)
    };
    Ok(SplittingStudy {
        reference_dt,
        lie_trotter: result(0),
        strang: result(1),
        rk4: result(2),
    })
}
