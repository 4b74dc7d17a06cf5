use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rustfft::num_complex::Complex64;

use super::config::{IcKind, RunConfig};
use crate::dynamics::{energy_spectral, SimState};
use crate::error::{Error, Result};
use crate::spectral::{SpectralField, TorusGrid};

/// Initial vorticity `ω̂₀` described by `cfg`, with energy measured in the
/// metric of `cfg.alpha`.
pub fn initial_vorticity(cfg: &RunConfig, grid: &Arc<TorusGrid>) -> Result<SpectralField> {
    let n2 = grid.len() as f64;
    let mut w = SpectralField::zeros(grid);
    match cfg.ic {
        IcKind::SingleMode => {
            let (kx, ky) = (cfg.mode_kx, cfg.mode_ky);
            if kx == 0 && ky == 0 {
                return Err(Error::Config("single_mode wavevector must be nonzero".into()));
            }
            if !grid.is_kept(grid.index_of(kx, ky)) {
                return Err(Error::Config(format!(
                    "mode ({kx}, {ky}) lies outside the resolved band of n = {}",
                    grid.n()
                )));
            }
            let c = Complex64::new(cfg.amplitude * n2 / 2.0, 0.0);
            w.set_coeff(kx, ky, c);
            w.set_coeff(-kx, -ky, c);
        }
        IcKind::TaylorGreen => {
            // 2 cos x cos y = cos(x + y) + cos(x - y)
            let c = Complex64::new(cfg.amplitude * n2 / 2.0, 0.0);
            for (kx, ky) in [(1, 1), (-1, -1), (1, -1), (-1, 1)] {
                w.set_coeff(kx, ky, c);
            }
        }
        IcKind::RandomBandlimited => {
            let band = cfg.band;
            if band < 1 || 3 * band >= grid.n() as i64 {
                return Err(Error::Config(format!(
                    "band {band} must satisfy 1 <= band < n/3 (n = {})",
                    grid.n()
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            for kx in -band..=band {
                for ky in -band..=band {
                    let re: f64 = StandardNormal.sample(&mut rng);
                    let im: f64 = StandardNormal.sample(&mut rng);
                    w.set_coeff(kx, ky, Complex64::new(re, im));
                }
            }
            w.symmetrize();
            w.pin_mean();
            let e = energy_spectral(&w.helmholtz(cfg.alpha), cfg.alpha);
            let scale = if e > 0.0 { (cfg.energy / e).sqrt() } else { 0.0 };
            w = w.scale(scale);
        }
    }
    Ok(w)
}

/// Builds the initial state: `q̂₀ = (1 - α²Δ) ω̂₀`, viscosity and time 0.
pub fn make_initial_condition(cfg: &RunConfig) -> Result<SimState> {
    cfg.validate()?;
    let grid = TorusGrid::new(cfg.n)?;
    let w = initial_vorticity(cfg, &grid)?;
    SimState::from_omega(&w, cfg.alpha, cfg.nu, 0.0)
}
