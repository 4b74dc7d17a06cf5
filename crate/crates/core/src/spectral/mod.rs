//! Periodic grid, transforms and Fourier-multiplier operators on `[0, 2π)²`.

mod field;
mod grid;

pub use field::{curl_spectral, PhysicalField, SpectralField, VectorField, HERMITIAN_TOL};
pub use grid::TorusGrid;
