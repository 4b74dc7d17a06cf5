//! Pseudospectral solver for the 2D averaged Euler (Euler-α) equations and
//! their viscous counterpart on the periodic torus `[0, 2π)²`.
//!
//! The state is the potential vorticity `q = (1 - α²Δ)ω`, advanced by the
//! transport law `∂t q + u·∇q = νΔω`. Modules, bottom up:
//!
//! - [`spectral`]: grid, FFTs, Fourier multipliers, 2/3-rule dealiasing.
//! - [`dynamics`]: vorticity- and velocity-form right-hand sides, Leray
//!   projection, the coadjoint operator `ad*ᵤu`, conserved quantities.
//! - [`integrators`]: RK4, the exact viscous semigroup, Lie–Trotter and
//!   Strang product formulas.
//! - [`lagrangian`]: particle markers for the flow map and its Jacobian.
//! - [`experiments`]: configuration, I/O, runs and parameter sweeps.

pub mod dynamics;
pub mod error;
pub mod experiments;
pub mod integrators;
pub mod lagrangian;
pub mod spectral;

pub use dynamics::{compute_diagnostics, Diagnostics, SimState};
pub use error::{Error, Result};
pub use integrators::{integrate, Scheme, StepperConfig};
pub use spectral::{PhysicalField, SpectralField, TorusGrid, VectorField};
