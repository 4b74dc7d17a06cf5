//! Time steppers for the potential-vorticity equation.
//!
//! The viscous operator acting on `q` is `νΔ(1 - α²Δ)⁻¹`, diagonal in Fourier
//! space, so its flow is available in closed form ([`diffusion_semigroup`]).
//! The product-formula steppers alternate that exact flow with an inviscid
//! RK4 step of the transport part.

use std::fmt;
use std::str::FromStr;

use crate::dynamics::{cfl_number, compute_diagnostics, rhs_vorticity, Diagnostics, SimState};
use crate::error::{Error, Result};

pub const DEFAULT_CFL_LIMIT: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Rk4,
    LieTrotter,
    Strang,
}

impl Scheme {
    pub fn as_str(self) -> &'static str {
        match self {
            Scheme::Rk4 => "rk4",
            Scheme::LieTrotter => "lie_trotter",
            Scheme::Strang => "strang",
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "rk4" => Ok(Scheme::Rk4),
            "lie_trotter" | "lie-trotter" => Ok(Scheme::LieTrotter),
            "strang" => Ok(Scheme::Strang),
            other => Err(Error::Config(format!("unknown scheme '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepperConfig {
    pub dt: f64,
    pub scheme: Scheme,
    pub cfl_limit: f64,
}

impl StepperConfig {
    pub fn new(dt: f64, scheme: Scheme) -> Result<Self> {
        Self::with_cfl_limit(dt, scheme, DEFAULT_CFL_LIMIT)
    }

    pub fn with_cfl_limit(dt: f64, scheme: Scheme, cfl_limit: f64) -> Result<Self> {
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidParameter(format!("dt must be > 0, got {dt}")));
        }
        if !(cfl_limit > 0.0 && cfl_limit <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "cfl_limit must lie in (0, 1], got {cfl_limit}"
            )));
        }
        Ok(StepperConfig {
            dt,
            scheme,
            cfl_limit,
        })
    }

    /// One step of length `dt` (which may be shorter than `self.dt`).
    pub fn step(&self, s: &SimState, dt: f64) -> Result<SimState> {
        match self.scheme {
            Scheme::Rk4 => step_rk4(s, dt, self.cfl_limit),
            Scheme::LieTrotter => step_lie_trotter(s, dt, self.cfl_limit),
            Scheme::Strang => step_strang(s, dt, self.cfl_limit),
        }
    }
}

fn check_cfl(s: &SimState, dt: f64, limit: f64) -> Result<()> {
    let cfl = cfl_number(s, dt);
    if !cfl.is_finite() {
        return Err(Error::NonFinite);
    }
    if cfl > limit {
        return Err(Error::CflViolation { cfl, limit });
    }
    Ok(())
}

fn rk4_unchecked(s: &SimState, dt: f64) -> Result<SimState> {
    let q0 = s.q_hat();
    let k1 = rhs_vorticity(s);
    let s2 = s.evolve(q0.add_scaled(&k1, 0.5 * dt), s.t() + 0.5 * dt);
    let k2 = rhs_vorticity(&s2);
    let s3 = s.evolve(q0.add_scaled(&k2, 0.5 * dt), s.t() + 0.5 * dt);
    let k3 = rhs_vorticity(&s3);
    let s4 = s.evolve(q0.add_scaled(&k3, dt), s.t() + dt);
    let k4 = rhs_vorticity(&s4);
    let w = dt / 6.0;
    let q1 = q0.zip_with(&k1, |a, b| a + b * w)
        .zip_with(&k2, |a, b| a + b * (2.0 * w))
        .zip_with(&k3, |a, b| a + b * (2.0 * w))
        .zip_with(&k4, |a, b| a + b * w);
    if !q1.is_finite() {
        return Err(Error::NonFinite);
    }
    Ok(s.evolve(q1, s.t() + dt))
}

/// Classical four-stage Runge–Kutta step of the full vorticity equation.
pub fn step_rk4(s: &SimState, dt: f64, cfl_limit: f64) -> Result<SimState> {
    check_cfl(s, dt, cfl_limit)?;
    rk4_unchecked(s, dt)
}

/// Exact flow of `∂t q = νΔ(1 - α²Δ)⁻¹ q`: each mode is multiplied by
/// `exp(-ν dt k² / (1 + α²k²))`. The time label advances by `dt`.
pub fn diffusion_semigroup(s: &SimState, dt: f64) -> SimState {
    if s.nu() == 0.0 {
        return s.with_time(s.t() + dt);
    }
    let (nu, a2) = (s.nu(), s.alpha() * s.alpha());
    let q = s
        .q_hat()
        .apply_multiplier(|kx, ky| {
            let k2 = (kx * kx + ky * ky) as f64;
            (-nu * dt * k2 / (1.0 + a2 * k2)).exp()
        });
    s.evolve(q, s.t() + dt)
}

fn inviscid_rk4(s: &SimState, dt: f64) -> Result<SimState> {
    let out = rk4_unchecked(&s.with_nu(0.0), dt)?;
    Ok(out.with_nu(s.nu()))
}

/// Diffusion first, then one inviscid RK4 transport step.
pub fn step_lie_trotter(s: &SimState, dt: f64, cfl_limit: f64) -> Result<SimState> {
    check_cfl(s, dt, cfl_limit)?;
    let d = diffusion_semigroup(s, dt).with_time(s.t());
    inviscid_rk4(&d, dt)
}

/// Half diffusion, inviscid RK4 transport, half diffusion.
pub fn step_strang(s: &SimState, dt: f64, cfl_limit: f64) -> Result<SimState> {
    check_cfl(s, dt, cfl_limit)?;
    let d = diffusion_semigroup(s, 0.5 * dt).with_time(s.t());
    let a = inviscid_rk4(&d, dt)?;
    Ok(diffusion_semigroup(&a, 0.5 * dt).with_time(s.t() + dt))
}

/// Handed to the observer passed to [`integrate`].
#[derive(Debug)]
pub struct Observation<'a> {
    pub step: usize,
    pub state: &'a SimState,
    pub diagnostics: Diagnostics,
}

/// Steps from `s0.t` to `t_final`; the last step is shortened to land on
/// `t_final` exactly. The observer sees the initial state, every
/// `every`-th step and the final state.
pub fn integrate<F>(s0: &SimState, t_final: f64, cfg: &StepperConfig, every: usize, mut observer: F) -> Result<SimState>
where
    F: FnMut(&Observation<'_>) -> Result<()>,
{
    let t0 = s0.t();
    if !(t_final >= t0) {
        return Err(Error::InvalidParameter(format!(
            "t_final {t_final} precedes initial time {t0}"
        )));
    }
    let every = every.max(1);
    let span = t_final - t0;
    // Guard against a spurious sliver step from roundoff in span / dt.
    let steps = ((span / cfg.dt) - 1e-9).ceil().max(0.0) as usize;

    let observe = |obs: &mut F, step: usize, s: &SimState| {
        obs(&Observation {
            step,
            state: s,
            diagnostics: compute_diagnostics(s, cfg.dt),
        })
    };

    observe(&mut observer, 0, s0)?;
    let mut s = s0.clone();
    for i in 0..steps {
        let t_next = if i + 1 == steps {
            t_final
        } else {
            t0 + (i + 1) as f64 * cfg.dt
        };
        let h = t_next - s.t();
        s = cfg
            .step(&s, h)
            .map_err(|e| Error::StepFailed {
                t: s.t(),
                source: Box::new(e),
            })?
            .with_time(t_next);
        let n = i + 1;
        if n % every == 0 || n == steps {
            observe(&mut observer, n, &s)?;
        }
    }
    Ok(s)
}
