//! Right-hand sides of the Euler-α equations and their diagnostics.
//!
//! Conventions: `ω = ∂x uy - ∂y ux`, `ω = -Δψ`, `u = (∂y ψ, -∂x ψ)` and the
//! potential vorticity `q = (1 - α²Δ) ω` is the prognostic variable. With
//! these signs the inviscid vorticity form is pure transport,
//! `∂t q + u·∇q = 0`, which is the Lie–Poisson equation `∂t q = {ψ, q}` for
//! the bracket `{ψ, q} = ∂x ψ ∂y q - ∂y ψ ∂x q`. Taking the curl of the viscous
//! velocity equation adds `νΔω` to the right-hand side.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::spectral::{curl_spectral, PhysicalField, SpectralField, TorusGrid, VectorField};

/// Potential vorticity plus parameters: the full dynamical state.
#[derive(Debug, Clone, PartialEq)]
pub struct SimState {
    q_hat: SpectralField,
    alpha: f64,
    nu: f64,
    t: f64,
}

impl SimState {
    /// Validates parameters and symmetry; the mean of `q` is pinned to zero.
    pub fn new(mut q_hat: SpectralField, alpha: f64, nu: f64, t: f64) -> Result<Self> {
        check_nonneg("alpha", alpha)?;
        check_nonneg("nu", nu)?;
        if !t.is_finite() {
            return Err(Error::InvalidParameter(format!("t must be finite, got {t}")));
        }
        if !q_hat.is_finite() {
            return Err(Error::NonFinite);
        }
        if !q_hat.is_hermitian() {
            return Err(Error::NotHermitian {
                defect: q_hat.hermitian_defect(),
            });
        }
        q_hat.pin_mean();
        Ok(SimState { q_hat, alpha, nu, t })
    }

    /// Builds the state from vorticity, `q = (1 - α²Δ) ω`.
    pub fn from_omega(omega_hat: &SpectralField, alpha: f64, nu: f64, t: f64) -> Result<Self> {
        SimState::new(omega_hat.helmholtz(alpha), alpha, nu, t)
    }

    pub fn zero(grid: &Arc<TorusGrid>, alpha: f64, nu: f64) -> Result<Self> {
        SimState::new(SpectralField::zeros(grid), alpha, nu, 0.0)
    }

    pub fn q_hat(&self) -> &SpectralField {
        &self.q_hat
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn grid(&self) -> &Arc<TorusGrid> {
        self.q_hat.grid()
    }

    pub fn omega(&self) -> SpectralField {
        omega_from_q(&self.q_hat, self.alpha)
    }

    pub fn velocity(&self) -> VectorField {
        velocity_from_q(&self.q_hat, self.alpha)
    }

    /// Same state with a different viscosity.
    pub fn with_nu(&self, nu: f64) -> SimState {
        SimState { nu, ..self.clone() }
    }

    /// Same state at a different time label.
    pub fn with_time(&self, t: f64) -> SimState {
        SimState { t, ..self.clone() }
    }

    /// Replaces `q` (mean re-pinned) and the time label.
    pub(crate) fn evolve(&self, mut q_hat: SpectralField, t: f64) -> SimState {
        q_hat.pin_mean();
        SimState {
            q_hat,
            alpha: self.alpha,
            nu: self.nu,
            t,
        }
    }

    /// The state with `q → -q`, i.e. every velocity reversed.
    pub fn reversed(&self) -> SimState {
        SimState {
            q_hat: self.q_hat.scale(-1.0),
            ..self.clone()
        }
    }
}

fn check_nonneg(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "{name} must be finite and >= 0, got {v}"
        )));
    }
    Ok(())
}

/// Conserved and monitored quantities of a state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Diagnostics {
    pub t: f64,
    /// `½∫(|u|² + α²|∇u|²) dx`.
    pub energy: f64,
    /// `∫q dx`.
    pub mean_q: f64,
    /// `∫q² dx`.
    pub casimir2: f64,
    /// `∫ω² dx`.
    pub enstrophy: f64,
    pub max_u: f64,
    /// `max|u| dt / h`.
    pub cfl: f64,
}

pub fn omega_from_q(q: &SpectralField, alpha: f64) -> SpectralField {
    q.inverse_helmholtz(alpha)
}

/// Spectral velocity `(ûx, ûy)` recovered from `q`.
pub fn velocity_spectral(q: &SpectralField, alpha: f64) -> (SpectralField, SpectralField) {
    let psi = omega_from_q(q, alpha).stream_unchecked();
    (psi.dy(), psi.dx().scale(-1.0))
}

pub fn velocity_from_q(q: &SpectralField, alpha: f64) -> VectorField {
    let (ux, uy) = velocity_spectral(q, alpha);
    let (x, y) = SpectralField::to_physical_pair(&ux, &uy);
    VectorField { x, y }
}

/// Dealiased advective term `u·∇q`.
pub fn advection(q: &SpectralField, alpha: f64) -> SpectralField {
    let (ux, uy) = velocity_spectral(q, alpha);
    let (ux, uy) = (ux.dealias(), uy.dealias());
    let (qx, qy) = (q.dx().dealias(), q.dy().dealias());
    let (ux, uy) = SpectralField::to_physical_pair(&ux, &uy);
    let (qx, qy) = SpectralField::to_physical_pair(&qx, &qy);
    let prod: Vec<f64> = ux
        .values()
        .iter()
        .zip(uy.values())
        .zip(qx.values().iter().zip(qy.values()))
        .map(|((a, b), (c, d))| a * c + b * d)
        .collect();
    let prod = PhysicalField::from_values(q.grid(), prod).expect("grid-sized product");
    let mut out = prod.forward_transform().dealias();
    out.pin_mean();
    out
}

/// `dq̂/dt = -(u·∇q)^ - ν k² ω̂`.
pub fn rhs_vorticity(s: &SimState) -> SpectralField {
    let mut adv = advection(&s.q_hat, s.alpha);
    if s.nu == 0.0 {
        for c in adv.coeffs_mut() {
            *c = -*c;
        }
        return adv;
    }
    let a2 = s.alpha * s.alpha;
    let nu = s.nu;
    let grid = s.grid().clone();
    let q = s.q_hat.coeffs();
    for (idx, c) in adv.coeffs_mut().iter_mut().enumerate() {
        let (kx, ky) = grid.mode(idx);
        let k2 = (kx * kx + ky * ky) as f64;
        *c = -*c - q[idx] * (nu * k2 / (1.0 + a2 * k2));
    }
    adv.pin_mean();
    adv
}

/// Leray projection `I - k kᵀ / k²` on spectral components; the mean flow is
/// left untouched.
pub fn leray_project_spectral(wx: &SpectralField, wy: &SpectralField) -> (SpectralField, SpectralField) {
    let grid = wx.grid();
    let mut px = wx.clone();
    let mut py = wy.clone();
    let (cx, cy) = (wx.coeffs(), wy.coeffs());
    for idx in 0..grid.len() {
        let (kx, ky) = grid.mode(idx);
        let k2 = (kx * kx + ky * ky) as f64;
        if k2 == 0.0 {
            continue;
        }
        let (kx, ky) = (kx as f64, ky as f64);
        let kdotw = (cx[idx] * kx + cy[idx] * ky) / k2;
        px.coeffs_mut()[idx] = cx[idx] - kdotw * kx;
        py.coeffs_mut()[idx] = cy[idx] - kdotw * ky;
    }
    (px, py)
}

/// L²-orthogonal projection onto divergence-free fields.
pub fn leray_project(w: &VectorField) -> VectorField {
    let (wx, wy) = w.forward_transform();
    let (px, py) = leray_project_spectral(&wx, &wy);
    let (x, y) = SpectralField::to_physical_pair(&px, &py);
    VectorField { x, y }
}

/// Order in which the pressure projection and the Helmholtz inverse are
/// applied inside [`ad_star_spectral`]. Both are Fourier multipliers on the
/// torus so the results agree to roundoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProjectionOrder {
    ProjectThenFilter,
    FilterThenProject,
}

/// Dealiased `∇ᵤv - α²(∇u)ᵀ·Δu` with `v = (1 - α²Δ)u`, before projection.
pub fn ep_momentum_flux(s: &SimState) -> (SpectralField, SpectralField) {
    let a2 = s.alpha * s.alpha;
    let (ux, uy) = velocity_spectral(&s.q_hat, s.alpha);
    let (ux, uy) = (ux.dealias(), uy.dealias());
    let (vx, vy) = (ux.helmholtz(s.alpha), uy.helmholtz(s.alpha));

    let (pux, puy) = SpectralField::to_physical_pair(&ux, &uy);
    let (vx_x, vx_y) = SpectralField::to_physical_pair(&vx.dx(), &vx.dy());
    let (vy_x, vy_y) = SpectralField::to_physical_pair(&vy.dx(), &vy.dy());
    let (ux_x, uy_x) = SpectralField::to_physical_pair(&ux.dx(), &uy.dx());
    let (ux_y, uy_y) = SpectralField::to_physical_pair(&ux.dy(), &uy.dy());
    let (lux, luy) = SpectralField::to_physical_pair(&ux.laplacian(), &uy.laplacian());

    let grid = s.grid();
    let mut nx = Vec::with_capacity(grid.len());
    let mut ny = Vec::with_capacity(grid.len());
    for i in 0..grid.len() {
        let (u, w) = (pux.values()[i], puy.values()[i]);
        let (lx, ly) = (lux.values()[i], luy.values()[i]);
        nx.push(
            u * vx_x.values()[i] + w * vx_y.values()[i]
                - a2 * (ux_x.values()[i] * lx + uy_x.values()[i] * ly),
        );
        ny.push(
            u * vy_x.values()[i] + w * vy_y.values()[i]
                - a2 * (ux_y.values()[i] * lx + uy_y.values()[i] * ly),
        );
    }
    let nx = PhysicalField::from_values(grid, nx).expect("grid-sized product");
    let ny = PhysicalField::from_values(grid, ny).expect("grid-sized product");
    let (fx, fy) = PhysicalField::forward_pair(&nx, &ny);
    (fx.dealias(), fy.dealias())
}

/// Spectral components of `ad*ᵤu = (1 - α²Δ)⁻¹ P[∇ᵤv - α²(∇u)ᵀ·Δu]`.
pub fn ad_star_spectral(s: &SimState, order: ProjectionOrder) -> (SpectralField, SpectralField) {
    let (fx, fy) = ep_momentum_flux(s);
    match order {
        ProjectionOrder::ProjectThenFilter => {
            let (px, py) = leray_project_spectral(&fx, &fy);
            (px.inverse_helmholtz(s.alpha), py.inverse_helmholtz(s.alpha))
        }
        ProjectionOrder::FilterThenProject => {
            leray_project_spectral(&fx.inverse_helmholtz(s.alpha), &fy.inverse_helmholtz(s.alpha))
        }
    }
}

/// The coadjoint term whose negative is `du/dt` for the inviscid flow.
pub fn ad_star(s: &SimState) -> VectorField {
    let (ax, ay) = ad_star_spectral(s, ProjectionOrder::ProjectThenFilter);
    let (x, y) = SpectralField::to_physical_pair(&ax, &ay);
    VectorField { x, y }
}

/// `curl((1 - α²Δ)(-ad*ᵤu))`: the velocity-form tendency mapped to `dq/dt`.
pub fn velocity_form_q_tendency(s: &SimState) -> SpectralField {
    let (ax, ay) = ad_star_spectral(s, ProjectionOrder::ProjectThenFilter);
    curl_spectral(&ax.helmholtz(s.alpha), &ay.helmholtz(s.alpha)).scale(-1.0)
}

/// Energy from the modal sum `½ Σ (1 + α²k²) |û|²`.
pub fn energy_spectral(q: &SpectralField, alpha: f64) -> f64 {
    let grid = q.grid();
    let a2 = alpha * alpha;
    let psi = omega_from_q(q, alpha).stream_unchecked();
    let mut sum = 0.0;
    for (idx, c) in psi.coeffs().iter().enumerate() {
        let (kx, ky) = grid.mode(idx);
        let k2 = (kx * kx + ky * ky) as f64;
        // |û|² = k²|ψ̂|² except on the Nyquist lines where the derivative is cut.
        let kx2 = if grid.is_nyquist(kx) { 0.0 } else { (kx * kx) as f64 };
        let ky2 = if grid.is_nyquist(ky) { 0.0 } else { (ky * ky) as f64 };
        sum += (1.0 + a2 * k2) * (kx2 + ky2) * c.norm_sqr();
    }
    let n2 = grid.len() as f64;
    0.5 * sum * grid.cell_area() / n2
}

/// Energy from physical-space quadrature `½ ∫ u·v dx`, `v = (1 - α²Δ)u`.
pub fn energy_physical(q: &SpectralField, alpha: f64) -> f64 {
    let (ux, uy) = velocity_spectral(q, alpha);
    let (px, py) = SpectralField::to_physical_pair(&ux, &uy);
    let (vx, vy) = SpectralField::to_physical_pair(&ux.helmholtz(alpha), &uy.helmholtz(alpha));
    0.5 * (px.integral_product(&vx) + py.integral_product(&vy))
}

pub fn compute_diagnostics(s: &SimState, dt: f64) -> Diagnostics {
    let grid = s.grid();
    let omega = s.omega();
    let max_u = s.velocity().max_norm();
    Diagnostics {
        t: s.t,
        energy: energy_spectral(&s.q_hat, s.alpha),
        mean_q: s.q_hat.mean() * grid.cell_area() * grid.len() as f64,
        casimir2: s.q_hat.inner(&s.q_hat),
        enstrophy: omega.inner(&omega),
        max_u,
        cfl: max_u * dt / grid.spacing(),
    }
}

/// `max|u| dt / h`.
pub fn cfl_number(s: &SimState, dt: f64) -> f64 {
    s.velocity().max_norm() * dt / s.grid().spacing()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use rand_distr::{Distribution, StandardNormal};
    use rustfft::num_complex::Complex64;
    use std::f64::consts::PI;

    fn cos2x(grid: &Arc<TorusGrid>) -> SpectralField {
        PhysicalField::from_fn(grid, |x, _| (2.0 * x).cos()).forward_transform()
    }

    /// Random band-limited vorticity on `1 <= |k|∞ <= band`.
    pub(crate) fn random_band(grid: &Arc<TorusGrid>, band: i64, seed: u64) -> SpectralField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut f = SpectralField::zeros(grid);
        for kx in -band..=band {
            for ky in -band..=band {
                if kx == 0 && ky == 0 {
                    continue;
                }
                let re: f64 = StandardNormal.sample(&mut rng);
                let im: f64 = StandardNormal.sample(&mut rng);
                f.set_coeff(kx, ky, Complex64::new(re, im) * grid.len() as f64 * 0.1);
            }
        }
        f.symmetrize();
        f.pin_mean();
        f
    }

    fn rel_l2(a: &SpectralField, b: &SpectralField) -> f64 {
        a.sub(b).l2_norm() / b.l2_norm()
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn state_validation() {
        let g = TorusGrid::new(8).unwrap();
        let z = SpectralField::zeros(&g);
        assert!(SimState::new(z.clone(), -1.0, 0.0, 0.0).is_err());
        assert!(SimState::new(z.clone(), 0.0, f64::NAN, 0.0).is_err());
        let mut bad = z.clone();
        bad.set_coeff(1, 0, Complex64::new(1.0, 0.0));
        assert!(matches!(SimState::new(bad, 0.0, 0.0, 0.0), Err(Error::NotHermitian { .. })));
        let mut biased = z;
        biased.set_coeff(0, 0, Complex64::new(5.0, 0.0));
        let s = SimState::new(biased, 0.0, 0.0, 0.0).unwrap();
        assert_eq!(s.q_hat().coeff(0, 0), Complex64::new(0.0, 0.0));
    }

    #[test]
    fn omega_from_q_examples() {
        let g = TorusGrid::new(16).unwrap();
        let q = PhysicalField::from_fn(&g, |x, y| 3.0 * (x + y).cos()).forward_transform();
        assert_eq!(omega_from_q(&q, 0.0), q);
        let w = omega_from_q(&q, 1.0).inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, y| (x + y).cos());
        assert!(max_diff(w.values(), expect.values()) < 1e-13);
        let back = omega_from_q(&q, 1.0).helmholtz(1.0);
        assert!(rel_l2(&back, &q) < 1e-13);
    }

    #[test]
    fn velocity_of_single_shell() {
        let g = TorusGrid::new(32).unwrap();
        for alpha in [0.0, 0.5, 2.0] {
            let q = cos2x(&g).helmholtz(alpha);
            let u = velocity_from_q(&q, alpha);
            let ex = PhysicalField::zeros(&g);
            let ey = PhysicalField::from_fn(&g, |x, _| (2.0 * x).sin() / 2.0);
            assert!(max_diff(u.x.values(), ex.values()) < 1e-13);
            assert!(max_diff(u.y.values(), ey.values()) < 1e-13);
        }
        let u0 = velocity_from_q(&SpectralField::zeros(&g), 0.3);
        assert_eq!(u0.max_norm(), 0.0);
    }

    #[test]
    fn velocity_curl_and_divergence() {
        let g = TorusGrid::new(32).unwrap();
        let w = random_band(&g, 4, 1);
        let q = w.helmholtz(0.25);
        let u = velocity_from_q(&q, 0.25);
        assert!(rel_l2(&u.curl(), &w) < 1e-12);
        let div = u.divergence().inverse_transform().unwrap();
        assert!(div.max_abs() <= 1e-10 * u.max_norm());
    }

    #[test]
    fn single_shell_rhs() {
        let g = TorusGrid::new(32).unwrap();
        for alpha in [0.0, 0.5, 1.0] {
            let s = SimState::from_omega(&cos2x(&g), alpha, 0.0, 0.0).unwrap();
            assert!(rhs_vorticity(&s).max_abs() <= 1e-12 * s.q_hat().max_abs());
        }
        let s = SimState::from_omega(&cos2x(&g), 0.5, 0.01, 0.0).unwrap();
        let rhs = rhs_vorticity(&s);
        let expect = s.omega().scale(-0.04);
        assert!(rel_l2(&rhs, &expect) < 1e-13);

        let z = SimState::zero(&g, 0.5, 0.1).unwrap();
        assert_eq!(rhs_vorticity(&z).max_abs(), 0.0);
    }

    #[test]
    fn rhs_conserves_quadratic_invariants() {
        let g = TorusGrid::new(32).unwrap();
        for alpha in [0.0, 0.25, 1.0] {
            let s = SimState::from_omega(&random_band(&g, 4, 7), alpha, 0.0, 0.0).unwrap();
            let rhs = rhs_vorticity(&s);
            let q = s.q_hat();
            let scale = q.l2_norm() * rhs.l2_norm();
            assert!((2.0 * q.inner(&rhs)).abs() <= 1e-10 * scale);
            // dE/dt = ∫ψ dq/dt
            let psi = s.omega().stream_unchecked();
            assert!(psi.inner(&rhs).abs() <= 1e-10 * psi.l2_norm() * rhs.l2_norm());
            assert_eq!(rhs.coeff(0, 0), Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn viscosity_dissipates_energy() {
        let g = TorusGrid::new(32).unwrap();
        let s = SimState::from_omega(&random_band(&g, 4, 3), 0.25, 0.05, 0.0).unwrap();
        let psi = s.omega().stream_unchecked();
        assert!(psi.inner(&rhs_vorticity(&s)) < 0.0);
    }

    #[test]
    fn alpha_zero_is_classical_euler() {
        let g = TorusGrid::new(32).unwrap();
        let w = random_band(&g, 4, 5);
        let s = SimState::from_omega(&w, 0.0, 0.02, 0.0).unwrap();
        // -u·∇ω + νΔω evaluated independently in physical space
        let psi = w.stream_unchecked();
        let ux = psi.dy().to_physical();
        let uy = psi.dx().scale(-1.0).to_physical();
        let wx = w.dx().to_physical();
        let wy = w.dy().to_physical();
        let adv: Vec<f64> = (0..g.len())
            .map(|i| ux.values()[i] * wx.values()[i] + uy.values()[i] * wy.values()[i])
            .collect();
        let adv = PhysicalField::from_values(&g, adv).unwrap().forward_transform().dealias();
        let expect = adv.scale(-1.0).add(&w.laplacian().scale(0.02));
        assert!(rel_l2(&rhs_vorticity(&s), &expect) < 1e-13);
    }

    #[test]
    fn leray_examples() {
        let g = TorusGrid::new(16).unwrap();
        let grad = VectorField::new(
            PhysicalField::from_fn(&g, |x, _| -x.sin()),
            PhysicalField::zeros(&g),
        )
        .unwrap();
        assert!(leray_project(&grad).max_norm() < 1e-13);

        let u = velocity_from_q(&random_band(&g, 4, 2), 0.0);
        let pu = leray_project(&u);
        assert!(max_diff(pu.x.values(), u.x.values()) <= 1e-12 * u.max_norm());
        assert!(max_diff(pu.y.values(), u.y.values()) <= 1e-12 * u.max_norm());
    }

    #[test]
    fn leray_output_orthogonal_to_gradients() {
        let g = TorusGrid::new(32).unwrap();
        let a = random_band(&g, 6, 10).to_physical();
        let b = random_band(&g, 6, 11).to_physical();
        let w = VectorField::new(a, b).unwrap();
        let pw = leray_project(&w);
        let p = random_band(&g, 6, 12);
        let gp = VectorField::new(p.dx().to_physical(), p.dy().to_physical()).unwrap();
        let dot = pw.integral_dot(&gp);
        let scale = pw.integral_dot(&pw).sqrt() * gp.integral_dot(&gp).sqrt();
        assert!(dot.abs() <= 1e-10 * scale);
        let div = pw.divergence().to_physical();
        assert!(div.max_abs() <= 1e-10 * pw.max_norm());
        let twice = leray_project(&pw);
        assert!(max_diff(twice.x.values(), pw.x.values()) <= 1e-12 * pw.max_norm());
    }

    #[test]
    fn ad_star_examples() {
        let g = TorusGrid::new(32).unwrap();
        let z = SimState::zero(&g, 0.5, 0.0).unwrap();
        assert_eq!(ad_star(&z).max_norm(), 0.0);

        let s = SimState::from_omega(&cos2x(&g), 0.5, 0.0, 0.0).unwrap();
        let tend = velocity_form_q_tendency(&s);
        assert!(tend.max_abs() <= 1e-12 * s.q_hat().max_abs());
    }

    #[test]
    fn ad_star_matches_vorticity_form() {
        let g = TorusGrid::new(32).unwrap();
        for alpha in [0.0, 0.25, 1.0] {
            for seed in 0..3 {
                let s = SimState::from_omega(&random_band(&g, 4, 100 + seed), alpha, 0.0, 0.0).unwrap();
                let lhs = velocity_form_q_tendency(&s);
                let rhs = advection(s.q_hat(), alpha).scale(-1.0);
                assert!(rel_l2(&lhs, &rhs) <= 1e-10, "alpha {alpha} seed {seed}");

                let a = ad_star(&s);
                let div = a.divergence().to_physical();
                assert!(div.max_abs() <= 1e-10 * a.max_norm());

                let (p1, p2) = ad_star_spectral(&s, ProjectionOrder::ProjectThenFilter);
                let (f1, f2) = ad_star_spectral(&s, ProjectionOrder::FilterThenProject);
                let scale = p1.l2_norm().hypot(p2.l2_norm());
                let diff = p1.sub(&f1).l2_norm().hypot(p2.sub(&f2).l2_norm());
                assert!(diff <= 1e-11 * scale);
            }
        }
    }

    #[test]
    fn energy_two_routes_agree() {
        let g = TorusGrid::new(32).unwrap();
        for alpha in [0.0, 0.25, 1.0, 3.0] {
            let q = random_band(&g, 5, 21).helmholtz(alpha);
            let e1 = energy_spectral(&q, alpha);
            let e2 = energy_physical(&q, alpha);
            assert!(e1 > 0.0);
            assert!((e1 - e2).abs() <= 1e-11 * e1, "{e1} vs {e2}");
        }
    }

    #[test]
    fn diagnostics_single_shell_closed_form() {
        let g = TorusGrid::new(32).unwrap();
        let alpha = 0.5;
        let s = SimState::from_omega(&cos2x(&g), alpha, 0.0, 0.0).unwrap();
        let d = compute_diagnostics(&s, 0.01);
        // ½∫|u|² + α²|∇u|² with u = (0, sin 2x / 2)
        let expect = (1.0 + 4.0 * alpha * alpha) * PI * PI / 4.0;
        assert!((d.energy - expect).abs() <= 1e-13 * expect);
        assert_eq!(d.mean_q, 0.0);
        // ∫ω² = ∫cos²2x = 2π², q = 2ω
        assert!((d.enstrophy - 2.0 * PI * PI).abs() < 1e-12);
        assert!((d.casimir2 - 8.0 * PI * PI).abs() < 1e-11);
        assert!((d.max_u - 0.5).abs() < 1e-12);
        assert!((d.cfl - 0.5 * 0.01 / g.spacing()).abs() < 1e-14);
    }

    #[test]
    fn diagnostics_zero_and_homogeneity() {
        let g = TorusGrid::new(16).unwrap();
        let z = SimState::zero(&g, 0.3, 0.0).unwrap().with_time(2.0);
        let d = compute_diagnostics(&z, 0.1);
        assert_eq!(d.t, 2.0);
        assert_eq!((d.energy, d.mean_q, d.casimir2, d.enstrophy, d.max_u, d.cfl), (0.0, 0.0, 0.0, 0.0, 0.0, 0.0));

        let w = random_band(&g, 3, 8);
        let s1 = SimState::from_omega(&w, 0.3, 0.0, 0.0).unwrap();
        let s2 = SimState::from_omega(&w.scale(2.0), 0.3, 0.0, 0.0).unwrap();
        let (d1, d2) = (compute_diagnostics(&s1, 0.0), compute_diagnostics(&s2, 0.0));
        assert!((d2.energy - 4.0 * d1.energy).abs() <= 1e-13 * d2.energy);
        assert!((d2.casimir2 - 4.0 * d1.casimir2).abs() <= 1e-13 * d2.casimir2);
        assert_eq!(d2.mean_q, 2.0 * d1.mean_q);
    }
}
