//! Fast invariant suite behind the `check` subcommand.

use std::fmt;

use super::config::{IcKind, RunConfig};
use super::ic::make_initial_condition;
use crate::dynamics::{
    ad_star, ad_star_spectral, advection, energy_physical, energy_spectral, rhs_vorticity, velocity_form_q_tendency,
    ProjectionOrder, SimState,
};
use crate::error::Result;
use crate::integrators::{diffusion_semigroup, integrate, Scheme, StepperConfig};
use crate::spectral::SpectralField;

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub value: f64,
    pub tolerance: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.value <= self.tolerance
    }
}

impl fmt::Display for CheckOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {:<40} {:.3e} (tol {:.0e})",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.value,
            self.tolerance
        )
    }
}

fn rel(a: &SpectralField, b: &SpectralField) -> f64 {
    let d = b.l2_norm();
    if d == 0.0 {
        a.sub(b).l2_norm()
    } else {
        a.sub(b).l2_norm() / d
    }
}

/// Runs every check on random band-limited states built from `cfg` (grid size,
/// band and seed are taken from it).
pub fn run_checks(cfg: &RunConfig) -> Result<Vec<CheckOutcome>> {
    let mut out = Vec::new();
    let mut push = |name, value, tolerance| out.push(CheckOutcome { name, value, tolerance });

    let base = RunConfig {
        ic: IcKind::RandomBandlimited,
        nu: 0.0,
        ..cfg.clone()
    };
    let s = make_initial_condition(&base)?;
    let q = s.q_hat();

    let phys = q.inverse_transform()?;
    let back = phys.forward_transform();
    push("transform round trip", rel(&back, q), 1e-12);
    let grid_sum: f64 = phys.values().iter().map(|v| v * v).sum();
    let modal: f64 = q.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() / s.grid().len() as f64;
    push("Parseval identity", (grid_sum - modal).abs() / modal, 1e-12);

    let mut worst: f64 = 0.0;
    for alpha in [0.0, 0.1, 1.0, 10.0] {
        worst = worst.max(rel(&q.helmholtz(alpha).inverse_helmholtz(alpha), q));
    }
    push("Helmholtz inverse pair", worst, 1e-13);
    push(
        "multipliers commute",
        rel(&q.laplacian().inverse_helmholtz(0.7), &q.inverse_helmholtz(0.7).laplacian()),
        1e-13,
    );

    let (mut ep, mut div, mut order, mut e2, mut c2) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for alpha in [0.0, 0.25, 1.0] {
        let st = SimState::from_omega(&s.omega(), alpha, 0.0, 0.0)?;
        let lhs = velocity_form_q_tendency(&st);
        let rhs = advection(st.q_hat(), alpha).scale(-1.0);
        ep = ep.max(rel(&lhs, &rhs));
        let a = ad_star(&st);
        div = div.max(a.divergence().to_physical().max_abs() / a.max_norm().max(f64::MIN_POSITIVE));
        let (p1, p2) = ad_star_spectral(&st, ProjectionOrder::ProjectThenFilter);
        let (f1, f2) = ad_star_spectral(&st, ProjectionOrder::FilterThenProject);
        order = order.max(p1.sub(&f1).l2_norm().hypot(p2.sub(&f2).l2_norm()) / p1.l2_norm().hypot(p2.l2_norm()));
        let es = energy_spectral(st.q_hat(), alpha);
        e2 = e2.max((es - energy_physical(st.q_hat(), alpha)).abs() / es);
        let r = rhs_vorticity(&st);
        c2 = c2.max((2.0 * st.q_hat().inner(&r)).abs() / (st.q_hat().l2_norm() * r.l2_norm()));
    }
    push("Euler-Poincare vs vorticity form", ep, 1e-10);
    push("ad* divergence-free", div, 1e-10);
    push("projection/filter order", order, 1e-11);
    push("energy quadratures agree", e2, 1e-11);
    push("d/dt casimir2 (inviscid)", c2, 1e-10);

    let v = s.with_nu(0.05);
    let ab = diffusion_semigroup(&diffusion_semigroup(&v, 0.3), 0.2);
    push("diffusion semigroup law", rel(ab.q_hat(), diffusion_semigroup(&v, 0.5).q_hat()), 1e-14);

    let shell = make_initial_condition(&RunConfig {
        n: 32,
        ic: IcKind::SingleMode,
        mode_kx: 2,
        mode_ky: 0,
        amplitude: 1.0,
        alpha: 0.5,
        nu: 0.01,
        ..RunConfig::default()
    })?;
    let exact = shell.omega().scale((-0.02f64).exp());
    let stepped = integrate(&shell, 1.0, &StepperConfig::new(0.01, Scheme::Rk4)?, usize::MAX, |_| Ok(()))?;
    push("single-mode decay (rk4)", rel(&stepped.omega(), &exact), 1e-9);
    Ok(out)
}
