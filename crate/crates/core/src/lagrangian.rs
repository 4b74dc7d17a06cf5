//! Lagrangian markers approximating the flow map `η(t)` with `η̇ = u∘η`.
//!
//! Markers start on a uniform `m x m` lattice (`η(0) = id`) and are stored
//! unwrapped, so the winding of each marker around the torus is retained and
//! finite-difference stencils may cross the periodic seam by adding the
//! image of a period vector.

use rayon::prelude::*;
use rustfft::num_complex::Complex64;

use crate::dynamics::{velocity_spectral, SimState};
use crate::error::{Error, Result};
use crate::integrators::{integrate, StepperConfig};
use crate::spectral::SpectralField;

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Cells whose determinant falls at or below this value are flagged.
pub const DEGENERATE_DET: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct ParticleMap {
    m: usize,
    positions: Vec<[f64; 2]>,
    /// Images of the lattice period vectors `2π e_x`, `2π e_y` under the map.
    period_images: [[f64; 2]; 2],
}

impl ParticleMap {
    /// The identity map sampled on an `m x m` lattice; marker `(i, j)` has
    /// flat index `i * m + j` and sits at `(2π i/m, 2π j/m)`.
    pub fn identity(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::InvalidParameter("marker count must be positive".into()));
        }
        let h = TWO_PI / m as f64;
        let positions = (0..m * m)
            .map(|idx| [(idx / m) as f64 * h, (idx % m) as f64 * h])
            .collect();
        Ok(ParticleMap {
            m,
            positions,
            period_images: [[TWO_PI, 0.0], [0.0, TWO_PI]],
        })
    }

    /// Wraps explicit marker positions. `period_images` gives where the map
    /// sends the period vectors; flows isotopic to the identity use
    /// `[[2π, 0], [0, 2π]]`.
    pub fn from_positions(m: usize, positions: Vec<[f64; 2]>, period_images: [[f64; 2]; 2]) -> Result<Self> {
        if positions.len() != m * m {
            return Err(Error::InvalidParameter(format!(
                "expected {} markers, got {}",
                m * m,
                positions.len()
            )));
        }
        if positions.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::NonFinite);
        }
        Ok(ParticleMap {
            m,
            positions,
            period_images,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn positions(&self) -> &[[f64; 2]] {
        &self.positions
    }

    /// Lattice spacing `2π / m`.
    pub fn spacing(&self) -> f64 {
        TWO_PI / self.m as f64
    }

    /// Initial (reference) position of marker `idx`.
    pub fn lattice_point(&self, idx: usize) -> [f64; 2] {
        let h = self.spacing();
        [(idx / self.m) as f64 * h, (idx % self.m) as f64 * h]
    }

    /// Position of lattice node `(i, j)` for any integer indices, using the
    /// period images to step across the seam.
    fn node(&self, i: isize, j: isize) -> [f64; 2] {
        let m = self.m as isize;
        let (wi, ri) = (i.div_euclid(m), i.rem_euclid(m));
        let (wj, rj) = (j.div_euclid(m), j.rem_euclid(m));
        let p = self.positions[(ri * m + rj) as usize];
        let [ex, ey] = self.period_images;
        [
            p[0] + wi as f64 * ex[0] + wj as f64 * ey[0],
            p[1] + wi as f64 * ex[1] + wj as f64 * ey[1],
        ]
    }
}

/// Trigonometric interpolant of one or more real fields, evaluated exactly
/// at arbitrary points by direct Fourier summation over the dealiased modes.
#[derive(Debug, Clone)]
pub struct TrigInterpolant {
    kmax: usize,
    /// Per field: coefficients for `kx ∈ [0, kmax]`, `ky ∈ [-kmax, kmax]`,
    /// pre-weighted so that `f(x) = Re Σ c e^{ik.x}` over the half plane.
    coeffs: Vec<Vec<Complex64>>,
}

impl TrigInterpolant {
    pub fn new(fields: &[&SpectralField]) -> Result<Self> {
        let grid = fields
            .first()
            .ok_or_else(|| Error::InvalidParameter("no fields to interpolate".into()))?
            .grid()
            .clone();
        let n = grid.n();
        // largest k with 3|k| < n
        let kmax = (n - 1) / 3;
        let width = 2 * kmax + 1;
        let scale = 1.0 / grid.len() as f64;
        let mut coeffs = Vec::with_capacity(fields.len());
        for f in fields {
            if f.grid().n() != n {
                return Err(Error::GridMismatch(n, f.grid().n()));
            }
            let mut c = vec![Complex64::new(0.0, 0.0); (kmax + 1) * width];
            for kx in 0..=kmax as i64 {
                for ky in -(kmax as i64)..=kmax as i64 {
                    let w = match (kx, ky) {
                        (0, 0) => 1.0,
                        (0, k) if k < 0 => 0.0,
                        _ => 2.0,
                    };
                    c[kx as usize * width + (ky + kmax as i64) as usize] = f.coeff(kx, ky) * (w * scale);
                }
            }
            coeffs.push(c);
        }
        Ok(TrigInterpolant { kmax, coeffs })
    }

    pub fn n_fields(&self) -> usize {
        self.coeffs.len()
    }

    /// Values of every field at `p`, written into `out`.
    pub fn eval_into(&self, p: [f64; 2], out: &mut [f64]) {
        let k = self.kmax;
        let width = 2 * k + 1;
        let mut ex = vec![Complex64::new(1.0, 0.0); k + 1];
        let mut ey = vec![Complex64::new(1.0, 0.0); width];
        let (bx, by) = (Complex64::cis(p[0]), Complex64::cis(p[1]));
        for i in 1..=k {
            ex[i] = ex[i - 1] * bx;
        }
        let byc = by.conj();
        for i in 1..=k {
            ey[k + i] = ey[k + i - 1] * by;
            ey[k - i] = ey[k - i + 1] * byc;
        }
        for (o, c) in out.iter_mut().zip(&self.coeffs) {
            let mut acc = 0.0;
            for (kx, row) in c.chunks_exact(width).enumerate() {
                let s: Complex64 = row.iter().zip(&ey).map(|(a, b)| a * b).sum();
                let z = s * ex[kx];
                acc += z.re;
            }
            *o = acc;
        }
    }

    pub fn eval(&self, p: [f64; 2]) -> Vec<f64> {
        let mut out = vec![0.0; self.n_fields()];
        self.eval_into(p, &mut out);
        out
    }
}

/// Velocity of a state as an off-grid interpolant.
pub fn velocity_interpolant(s: &SimState) -> TrigInterpolant {
    let (ux, uy) = velocity_spectral(s.q_hat(), s.alpha());
    TrigInterpolant::new(&[&ux, &uy]).expect("two fields on one grid")
}

/// Evaluates a two-field (velocity) interpolant at every point.
pub fn eval_velocity_at(u: &TrigInterpolant, points: &[[f64; 2]]) -> Vec<[f64; 2]> {
    points
        .par_iter()
        .map(|&p| {
            let mut v = [0.0; 2];
            u.eval_into(p, &mut v);
            v
        })
        .collect()
}

/// Velocity interpolants at the start, midpoint and end of a particle step.
#[derive(Debug, Clone)]
pub struct StageVelocities {
    pub start: TrigInterpolant,
    pub mid: TrigInterpolant,
    pub end: TrigInterpolant,
}

/// One RK4 step of `dx/dt = u(t, x)` for every marker, with the velocity
/// field frozen per stage.
pub fn advect_particles_staged(pm: &ParticleMap, stages: &StageVelocities, dt: f64) -> ParticleMap {
    let positions = pm
        .positions
        .par_iter()
        .map(|&x| {
            let mut k1 = [0.0; 2];
            let mut k2 = [0.0; 2];
            let mut k3 = [0.0; 2];
            let mut k4 = [0.0; 2];
            stages.start.eval_into(x, &mut k1);
            stages.mid.eval_into([x[0] + 0.5 * dt * k1[0], x[1] + 0.5 * dt * k1[1]], &mut k2);
            stages.mid.eval_into([x[0] + 0.5 * dt * k2[0], x[1] + 0.5 * dt * k2[1]], &mut k3);
            stages.end.eval_into([x[0] + dt * k3[0], x[1] + dt * k3[1]], &mut k4);
            [
                x[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
                x[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
            ]
        })
        .collect();
    ParticleMap {
        m: pm.m,
        positions,
        period_images: pm.period_images,
    }
}

/// Advances markers from `s.t` to `s.t + dt`. The Eulerian state is stepped
/// internally with `stepper` to supply the velocity at `t + dt/2` and `t + dt`.
pub fn advect_particles(pm: &ParticleMap, s: &SimState, dt: f64, stepper: &StepperConfig) -> Result<ParticleMap> {
    let mid = integrate(s, s.t() + 0.5 * dt, stepper, usize::MAX, |_| Ok(()))?;
    let end = integrate(&mid, s.t() + dt, stepper, usize::MAX, |_| Ok(()))?;
    let stages = StageVelocities {
        start: velocity_interpolant(s),
        mid: velocity_interpolant(&mid),
        end: velocity_interpolant(&end),
    };
    Ok(advect_particles_staged(pm, &stages, dt))
}

/// Co-integrates the Eulerian state and the markers to `t_final`. Markers
/// take steps of `particle_dt` (the last one shortened); the Eulerian state
/// takes steps of `stepper.dt` between the marker stage times.
pub fn track_flow_map(
    s0: &SimState,
    pm0: &ParticleMap,
    t_final: f64,
    stepper: &StepperConfig,
    particle_dt: f64,
) -> Result<(ParticleMap, SimState)> {
    if !(particle_dt > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "particle_dt must be > 0, got {particle_dt}"
        )));
    }
    let t0 = s0.t();
    let steps = (((t_final - t0) / particle_dt) - 1e-9).ceil().max(0.0) as usize;
    let mut s = s0.clone();
    let mut pm = pm0.clone();
    let mut start = velocity_interpolant(&s);
    for i in 0..steps {
        let t_next = if i + 1 == steps {
            t_final
        } else {
            t0 + (i + 1) as f64 * particle_dt
        };
        let h = t_next - s.t();
        let mid_state = integrate(&s, s.t() + 0.5 * h, stepper, usize::MAX, |_| Ok(()))?;
        let end_state = integrate(&mid_state, t_next, stepper, usize::MAX, |_| Ok(()))?;
        let stages = StageVelocities {
            start,
            mid: velocity_interpolant(&mid_state),
            end: velocity_interpolant(&end_state),
        };
        pm = advect_particles_staged(&pm, &stages, h);
        start = stages.end;
        s = end_state;
    }
    Ok((pm, s))
}

/// Per-marker `det(Dη)` with a per-cell degeneracy flag.
#[derive(Debug, Clone, PartialEq)]
pub struct JacobianField {
    pub m: usize,
    pub det: Vec<f64>,
    pub degenerate: Vec<bool>,
}

impl JacobianField {
    /// `max |det - 1|` over all markers.
    pub fn max_deviation(&self) -> f64 {
        self.det.iter().fold(0.0, |m, d| m.max((d - 1.0).abs()))
    }

    pub fn degenerate_count(&self) -> usize {
        self.degenerate.iter().filter(|&&d| d).count()
    }
}

/// Second-order central-difference `det(Dη)` on the marker lattice.
pub fn jacobian_determinant(pm: &ParticleMap) -> Result<JacobianField> {
    let m = pm.m;
    if m < 3 {
        return Err(Error::InvalidParameter(format!(
            "jacobian needs at least 3 markers per side, got {m}"
        )));
    }
    let inv2h = 1.0 / (2.0 * pm.spacing());
    let mut det = Vec::with_capacity(m * m);
    let mut degenerate = Vec::with_capacity(m * m);
    for i in 0..m as isize {
        for j in 0..m as isize {
            let (xp, xm) = (pm.node(i + 1, j), pm.node(i - 1, j));
            let (yp, ym) = (pm.node(i, j + 1), pm.node(i, j - 1));
            let a = (xp[0] - xm[0]) * inv2h;
            let c = (xp[1] - xm[1]) * inv2h;
            let b = (yp[0] - ym[0]) * inv2h;
            let d = (yp[1] - ym[1]) * inv2h;
            let jd = a * d - b * c;
            degenerate.push(!jd.is_finite() || jd <= DEGENERATE_DET);
            det.push(jd);
        }
    }
    Ok(JacobianField { m, det, degenerate })
}

/// `½ Σ (|u∘η|² + α²|∇u∘η|²) (2π/m)²`: the metric evaluated on `η̇ = u∘η`
/// by quadrature over the marker lattice. Equals the Eulerian energy when
/// `η` preserves volume.
pub fn lagrangian_energy(pm: &ParticleMap, s: &SimState) -> f64 {
    let (ux, uy) = velocity_spectral(s.q_hat(), s.alpha());
    let (uxx, uxy, uyx, uyy) = (ux.dx(), ux.dy(), uy.dx(), uy.dy());
    let interp = TrigInterpolant::new(&[&ux, &uy, &uxx, &uxy, &uyx, &uyy]).expect("same grid");
    let a2 = s.alpha() * s.alpha();
    let sum: f64 = pm
        .positions
        .par_iter()
        .map(|&p| {
            let mut v = [0.0; 6];
            interp.eval_into(p, &mut v);
            let kinetic = v[0] * v[0] + v[1] * v[1];
            let grad = v[2..].iter().map(|g| g * g).sum::<f64>();
            kinetic + a2 * grad
        })
        .sum();
    let h = pm.spacing();
    0.5 * sum * h * h
}
