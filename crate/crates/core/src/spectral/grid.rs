use std::fmt;
use std::sync::Arc;

use rustfft::num_complex::Complex64;
use rustfft::{Fft, FftPlanner};

use crate::error::{Error, Result};

/// Uniform `n x n` periodic grid on `[0, 2π)²` with its integer wavenumber
/// lattice and 2/3-rule dealiasing mask.
///
/// Flat storage order for both physical samples and Fourier coefficients is
/// row-major with y fastest: index `ix * n + iy`. Grid point `(ix, iy)` sits at
/// `(2π ix / n, 2π iy / n)`; the coefficient at the same index is the mode
/// `(k(ix), k(iy))` with `k(i) = i` for `i < n/2` and `i - n` otherwise.
pub struct TorusGrid {
    n: usize,
    wavenumbers: Vec<i64>,
    mask: Vec<bool>,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl fmt::Debug for TorusGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TorusGrid").field("n", &self.n).finish()
    }
}

impl PartialEq for TorusGrid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl TorusGrid {
    pub fn new(n: usize) -> Result<Arc<TorusGrid>> {
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidGrid(n));
        }
        let half = (n / 2) as i64;
        let wavenumbers: Vec<i64> = (0..n as i64)
            .map(|i| if i < half { i } else { i - n as i64 })
            .collect();
        // |k| < n/3 in both directions; Nyquist (|k| = n/2) falls outside.
        let keep = |k: i64| 3 * k.unsigned_abs() < n as u64;
        let mut mask = Vec::with_capacity(n * n);
        for &kx in &wavenumbers {
            for &ky in &wavenumbers {
                mask.push(keep(kx) && keep(ky));
            }
        }
        let mut planner = FftPlanner::new();
        let fwd = planner.plan_fft_forward(n);
        let inv = planner.plan_fft_inverse(n);
        Ok(Arc::new(TorusGrid {
            n,
            wavenumbers,
            mask,
            fwd,
            inv,
        }))
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Grid spacing `h = 2π / n`.
    pub fn spacing(&self) -> f64 {
        2.0 * std::f64::consts::PI / self.n as f64
    }

    /// Area element of the trapezoidal (exact for trigonometric polynomials)
    /// quadrature: `(2π/n)²`.
    pub fn cell_area(&self) -> f64 {
        let h = self.spacing();
        h * h
    }

    #[inline]
    pub fn wavenumber(&self, i: usize) -> i64 {
        self.wavenumbers[i]
    }

    /// Wavenumber pair `(kx, ky)` of flat index `idx`.
    #[inline]
    pub fn mode(&self, idx: usize) -> (i64, i64) {
        (
            self.wavenumbers[idx / self.n],
            self.wavenumbers[idx % self.n],
        )
    }

    /// Flat index of mode `(kx, ky)`; wavenumbers are taken modulo `n`.
    #[inline]
    pub fn index_of(&self, kx: i64, ky: i64) -> usize {
        let n = self.n as i64;
        (kx.rem_euclid(n) * n + ky.rem_euclid(n)) as usize
    }

    /// Flat index of the mode `-k` paired with `idx` under Hermitian symmetry.
    #[inline]
    pub fn conjugate_index(&self, idx: usize) -> usize {
        let n = self.n;
        let (ix, iy) = (idx / n, idx % n);
        ((n - ix) % n) * n + (n - iy) % n
    }

    #[inline]
    pub fn is_kept(&self, idx: usize) -> bool {
        self.mask[idx]
    }

    pub fn dealias_mask(&self) -> &[bool] {
        &self.mask
    }

    #[inline]
    pub fn is_nyquist(&self, k: i64) -> bool {
        k == -(self.n as i64 / 2)
    }

    /// Physical coordinates of flat grid index `idx`.
    pub fn point(&self, idx: usize) -> (f64, f64) {
        let h = self.spacing();
        ((idx / self.n) as f64 * h, (idx % self.n) as f64 * h)
    }

    /// In-place 2D DFT. `inverse` selects `e^{+ik.x}`; no normalization is
    /// applied in either direction.
    pub(crate) fn fft2(&self, data: &mut [Complex64], inverse: bool) {
        let n = self.n;
        debug_assert_eq!(data.len(), n * n);
        let plan = if inverse { &self.inv } else { &self.fwd };
        let mut scratch = vec![Complex64::new(0.0, 0.0); plan.get_inplace_scratch_len()];
        plan.process_with_scratch(data, &mut scratch);
        transpose(data, n);
        plan.process_with_scratch(data, &mut scratch);
        transpose(data, n);
    }
}

fn transpose(data: &mut [Complex64], n: usize) {
    for i in 0..n {
        for j in (i + 1)..n {
            data.swap(i * n + j, j * n + i);
        }
    }
}
