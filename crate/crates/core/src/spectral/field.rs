use std::sync::Arc;

use rustfft::num_complex::Complex64;

use super::TorusGrid;
use crate::error::{Error, Result};

/// Relative tolerance for the Hermitian-symmetry check on inverse transforms.
pub const HERMITIAN_TOL: f64 = 1e-9;

/// Real samples of a scalar field on the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct PhysicalField {
    grid: Arc<TorusGrid>,
    values: Vec<f64>,
}

/// Fourier coefficients of a real scalar field.
///
/// Normalization: `F(k) = Σ_x f(x) e^{-ik.x}` (unnormalized forward sum) and
/// `f(x) = n⁻² Σ_k F(k) e^{ik.x}`. Parseval reads `Σ_x f² = n⁻² Σ_k |F|²` and
/// `∫ f g dx = (2π)² n⁻⁴ Σ_k F conj(G)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralField {
    grid: Arc<TorusGrid>,
    coeffs: Vec<Complex64>,
}

/// Two-component vector field in physical space.
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    pub x: PhysicalField,
    pub y: PhysicalField,
}

fn zero() -> Complex64 {
    Complex64::new(0.0, 0.0)
}

impl PhysicalField {
    pub fn zeros(grid: &Arc<TorusGrid>) -> Self {
        PhysicalField {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
        }
    }

    pub fn from_values(grid: &Arc<TorusGrid>, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} samples, got {}",
                grid.len(),
                values.len()
            )));
        }
        Ok(PhysicalField {
            grid: grid.clone(),
            values,
        })
    }

    /// Samples `f(x, y)` at every grid point.
    pub fn from_fn(grid: &Arc<TorusGrid>, f: impl Fn(f64, f64) -> f64) -> Self {
        let values = (0..grid.len())
            .map(|idx| {
                let (x, y) = grid.point(idx);
                f(x, y)
            })
            .collect();
        PhysicalField {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &Arc<TorusGrid> {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `∫ f g dx` by the grid quadrature.
    pub fn integral_product(&self, other: &PhysicalField) -> f64 {
        let s: f64 = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a * b)
            .sum();
        s * self.grid.cell_area()
    }

    pub fn forward_transform(&self) -> SpectralField {
        let mut buf: Vec<Complex64> = self.values.iter().map(|&v| Complex64::new(v, 0.0)).collect();
        self.grid.fft2(&mut buf, false);
        SpectralField {
            grid: self.grid.clone(),
            coeffs: buf,
        }
    }

    /// Transforms two real fields with a single complex FFT.
    pub fn forward_pair(a: &PhysicalField, b: &PhysicalField) -> (SpectralField, SpectralField) {
        let grid = &a.grid;
        let mut buf: Vec<Complex64> = a
            .values
            .iter()
            .zip(&b.values)
            .map(|(&x, &y)| Complex64::new(x, y))
            .collect();
        grid.fft2(&mut buf, false);
        let mut fa = vec![zero(); grid.len()];
        let mut fb = vec![zero(); grid.len()];
        for idx in 0..grid.len() {
            let c = buf[idx];
            let cc = buf[grid.conjugate_index(idx)].conj();
            fa[idx] = (c + cc) * 0.5;
            // (c - cc) / 2i
            let d = (c - cc) * 0.5;
            fb[idx] = Complex64::new(d.im, -d.re);
        }
        (
            SpectralField {
                grid: grid.clone(),
                coeffs: fa,
            },
            SpectralField {
                grid: grid.clone(),
                coeffs: fb,
            },
        )
    }
}

impl VectorField {
    pub fn new(x: PhysicalField, y: PhysicalField) -> Result<Self> {
        if x.grid.n() != y.grid.n() {
            return Err(Error::GridMismatch(x.grid.n(), y.grid.n()));
        }
        Ok(VectorField { x, y })
    }

    pub fn zeros(grid: &Arc<TorusGrid>) -> Self {
        VectorField {
            x: PhysicalField::zeros(grid),
            y: PhysicalField::zeros(grid),
        }
    }

    pub fn grid(&self) -> &Arc<TorusGrid> {
        self.x.grid()
    }

    pub fn forward_transform(&self) -> (SpectralField, SpectralField) {
        PhysicalField::forward_pair(&self.x, &self.y)
    }

    /// Maximum pointwise magnitude `max |w|`.
    pub fn max_norm(&self) -> f64 {
        self.x
            .values
            .iter()
            .zip(&self.y.values)
            .fold(0.0, |m, (a, b)| m.max(a.hypot(*b)))
    }

    /// `∫ w·z dx`.
    pub fn integral_dot(&self, other: &VectorField) -> f64 {
        self.x.integral_product(&other.x) + self.y.integral_product(&other.y)
    }

    /// Spectral divergence `∂x wx + ∂y wy`.
    pub fn divergence(&self) -> SpectralField {
        let (wx, wy) = self.forward_transform();
        wx.dx().add(&wy.dy())
    }

    /// Spectral curl `∂x wy - ∂y wx`.
    pub fn curl(&self) -> SpectralField {
        let (wx, wy) = self.forward_transform();
        curl_spectral(&wx, &wy)
    }
}

/// Curl of a vector field given by its spectral components.
pub fn curl_spectral(wx: &SpectralField, wy: &SpectralField) -> SpectralField {
    wy.dx().sub(&wx.dy())
}

impl SpectralField {
    pub fn zeros(grid: &Arc<TorusGrid>) -> Self {
        SpectralField {
            grid: grid.clone(),
            coeffs: vec![zero(); grid.len()],
        }
    }

    /// Wraps raw coefficients without checking symmetry.
    pub fn from_coeffs(grid: &Arc<TorusGrid>, coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "expected {} coefficients, got {}",
                grid.len(),
                coeffs.len()
            )));
        }
        Ok(SpectralField {
            grid: grid.clone(),
            coeffs,
        })
    }

    pub fn grid(&self) -> &Arc<TorusGrid> {
        &self.grid
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeffs_mut(&mut self) -> &mut [Complex64] {
        &mut self.coeffs
    }

    pub fn coeff(&self, kx: i64, ky: i64) -> Complex64 {
        self.coeffs[self.grid.index_of(kx, ky)]
    }

    pub fn set_coeff(&mut self, kx: i64, ky: i64, value: Complex64) {
        let idx = self.grid.index_of(kx, ky);
        self.coeffs[idx] = value;
    }

    /// Largest `|F(k) - conj F(-k)|`.
    pub fn hermitian_defect(&self) -> f64 {
        (0..self.grid.len())
            .map(|idx| (self.coeffs[idx] - self.coeffs[self.grid.conjugate_index(idx)].conj()).norm())
            .fold(0.0, f64::max)
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.norm()))
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_defect() <= HERMITIAN_TOL * self.max_abs().max(f64::MIN_POSITIVE)
    }

    /// Replaces the coefficients by `(F(k) + conj F(-k)) / 2`.
    pub fn symmetrize(&mut self) {
        let out: Vec<Complex64> = (0..self.grid.len())
            .map(|idx| (self.coeffs[idx] + self.coeffs[self.grid.conjugate_index(idx)].conj()) * 0.5)
            .collect();
        self.coeffs = out;
    }

    /// Inverse transform; rejects non-Hermitian input.
    pub fn inverse_transform(&self) -> Result<PhysicalField> {
        if !self.is_hermitian() {
            return Err(Error::NotHermitian {
                defect: self.hermitian_defect(),
            });
        }
        Ok(self.to_physical())
    }

    /// Inverse transform without the symmetry check; the imaginary part of the
    /// result is discarded.
    pub(crate) fn to_physical(&self) -> PhysicalField {
        let mut buf = self.coeffs.clone();
        self.grid.fft2(&mut buf, true);
        let scale = 1.0 / self.grid.len() as f64;
        PhysicalField {
            grid: self.grid.clone(),
            values: buf.iter().map(|c| c.re * scale).collect(),
        }
    }

    /// Inverse-transforms two Hermitian fields with one complex FFT.
    pub(crate) fn to_physical_pair(a: &SpectralField, b: &SpectralField) -> (PhysicalField, PhysicalField) {
        let grid = &a.grid;
        let mut buf: Vec<Complex64> = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&p, &q)| p + Complex64::new(-q.im, q.re))
            .collect();
        grid.fft2(&mut buf, true);
        let scale = 1.0 / grid.len() as f64;
        let xs = buf.iter().map(|c| c.re * scale).collect();
        let ys = buf.iter().map(|c| c.im * scale).collect();
        (
            PhysicalField {
                grid: grid.clone(),
                values: xs,
            },
            PhysicalField {
                grid: grid.clone(),
                values: ys,
            },
        )
    }

    /// Multiplies every coefficient by `m(kx, ky)`.
    pub fn apply_multiplier(&self, m: impl Fn(i64, i64) -> f64) -> SpectralField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let (kx, ky) = self.grid.mode(idx);
                c * m(kx, ky)
            })
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    fn map_indexed(&self, f: impl Fn(usize, i64, i64, Complex64) -> Complex64) -> SpectralField {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(idx, &c)| {
                let (kx, ky) = self.grid.mode(idx);
                f(idx, kx, ky, c)
            })
            .collect();
        SpectralField {
            grid: self.grid.clone(),
            coeffs,
        }
    }

    /// Laplacian, multiplier `-(kx² + ky²)`.
    pub fn laplacian(&self) -> SpectralField {
        self.apply_multiplier(|kx, ky| -((kx * kx + ky * ky) as f64))
    }

    /// `(1 - α²Δ)`, multiplier `1 + α²k²`.
    pub fn helmholtz(&self, alpha: f64) -> SpectralField {
        let a2 = alpha * alpha;
        self.apply_multiplier(|kx, ky| 1.0 + a2 * (kx * kx + ky * ky) as f64)
    }

    /// `(1 - α²Δ)⁻¹`, multiplier `1 / (1 + α²k²)`.
    pub fn inverse_helmholtz(&self, alpha: f64) -> SpectralField {
        let a2 = alpha * alpha;
        self.apply_multiplier(|kx, ky| 1.0 / (1.0 + a2 * (kx * kx + ky * ky) as f64))
    }

    /// Solves `-Δψ = ω` with the gauge `ψ(0) = 0`. Rejects `ω` with nonzero mean.
    pub fn stream_from_omega(&self) -> Result<SpectralField> {
        let mean = self.coeffs[0].norm();
        if mean > 1e-12 * self.max_abs().max(1.0) {
            return Err(Error::NonzeroMean {
                mean: self.coeffs[0].re / self.grid.len() as f64,
            });
        }
        Ok(self.stream_unchecked())
    }

    pub(crate) fn stream_unchecked(&self) -> SpectralField {
        self.apply_multiplier(|kx, ky| {
            let k2 = kx * kx + ky * ky;
            if k2 == 0 {
                0.0
            } else {
                1.0 / k2 as f64
            }
        })
    }

    /// Zeroes every mode outside the 2/3-rule mask.
    pub fn dealias(&self) -> SpectralField {
        self.map_indexed(|idx, _, _, c| if self.grid.is_kept(idx) { c } else { zero() })
    }

    /// `∂x`; the `kx = -n/2` column is zeroed so the result stays real.
    pub fn dx(&self) -> SpectralField {
        self.map_indexed(|_, kx, _, c| {
            if self.grid.is_nyquist(kx) {
                zero()
            } else {
                Complex64::new(-c.im, c.re) * kx as f64
            }
        })
    }

    /// `∂y`; the `ky = -n/2` row is zeroed so the result stays real.
    pub fn dy(&self) -> SpectralField {
        self.map_indexed(|_, _, ky, c| {
            if self.grid.is_nyquist(ky) {
                zero()
            } else {
                Complex64::new(-c.im, c.re) * ky as f64
            }
        })
    }

    pub fn add(&self, other: &SpectralField) -> SpectralField {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &SpectralField) -> SpectralField {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, s: f64) -> SpectralField {
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, other: &SpectralField, s: f64) -> SpectralField {
        self.zip_with(other, |a, b| a + b * s)
    }

    pub(crate) fn zip_with(&self, other: &SpectralField, f: impl Fn(Complex64, Complex64) -> Complex64) -> SpectralField {
        debug_assert_eq!(self.grid.n(), other.grid.n());
        SpectralField {
            grid: self.grid.clone(),
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(&a, &b)| f(a, b)).collect(),
        }
    }

    /// Sets the mean mode to zero.
    pub fn pin_mean(&mut self) {
        self.coeffs[0] = zero();
    }

    /// Mean value of the represented field, `F(0) / n²`.
    pub fn mean(&self) -> f64 {
        self.coeffs[0].re / self.grid.len() as f64
    }

    /// `∫ f g dx` computed in spectral space.
    pub fn inner(&self, other: &SpectralField) -> f64 {
        let s: f64 = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.re * b.re + a.im * b.im)
            .sum();
        let n2 = self.grid.len() as f64;
        s * self.grid.cell_area() / n2
    }

    /// `‖f‖_{L²}` over the torus.
    pub fn l2_norm(&self) -> f64 {
        self.inner(self).max(0.0).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn random_smooth(grid: &Arc<TorusGrid>, seed: u64) -> PhysicalField {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let terms: Vec<(f64, f64, f64, f64)> = (0..12)
            .map(|_| {
                (
                    rng.random_range(-4..=4) as f64,
                    rng.random_range(-4..=4) as f64,
                    rng.random_range(-1.0..1.0),
                    rng.random_range(0.0..2.0 * PI),
                )
            })
            .collect();
        PhysicalField::from_fn(grid, |x, y| {
            terms.iter().map(|&(a, b, c, p)| c * (a * x + b * y + p).cos()).sum()
        })
    }

    fn max_diff(a: &[f64], b: &[f64]) -> f64 {
        a.iter().zip(b).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
    }

    #[test]
    fn zero_field_transforms_to_zero() {
        let g = TorusGrid::new(16).unwrap();
        let f = PhysicalField::zeros(&g).forward_transform();
        assert!(f.coeffs().iter().all(|c| c.norm() == 0.0));
        let back = SpectralField::zeros(&g).inverse_transform().unwrap();
        assert!(back.values().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn cos_x_has_two_modes() {
        let g = TorusGrid::new(16).unwrap();
        let f = PhysicalField::from_fn(&g, |x, _| x.cos()).forward_transform();
        let big: Vec<usize> = (0..g.len()).filter(|&i| f.coeffs()[i].norm() > 1e-9).collect();
        assert_eq!(big.len(), 2);
        let a = f.coeff(1, 0);
        let b = f.coeff(-1, 0);
        assert!((a.norm() - b.norm()).abs() < 1e-12);
        assert!((a.re - 128.0).abs() < 1e-10);
    }

    #[test]
    fn cos_2x_from_single_mode_pair() {
        let g = TorusGrid::new(16).unwrap();
        let mut f = SpectralField::zeros(&g);
        let amp = Complex64::new(g.len() as f64 / 2.0, 0.0);
        f.set_coeff(2, 0, amp);
        f.set_coeff(-2, 0, amp);
        let p = f.inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, _| (2.0 * x).cos());
        assert!(max_diff(p.values(), expect.values()) < 1e-13);
    }

    #[test]
    fn round_trip_and_parseval() {
        let g = TorusGrid::new(32).unwrap();
        for seed in 0..5 {
            let f = random_smooth(&g, seed);
            let spec = f.forward_transform();
            assert!(spec.is_hermitian());
            let back = spec.inverse_transform().unwrap();
            assert!(max_diff(f.values(), back.values()) <= 1e-12 * f.max_abs());

            let lhs: f64 = f.values().iter().map(|v| v * v).sum();
            let rhs: f64 = spec.coeffs().iter().map(|c| c.norm_sqr()).sum::<f64>() / g.len() as f64;
            assert!((lhs - rhs).abs() <= 1e-12 * lhs);
        }
    }

    #[test]
    fn inverse_rejects_non_hermitian() {
        let g = TorusGrid::new(8).unwrap();
        let mut f = SpectralField::zeros(&g);
        f.set_coeff(1, 0, Complex64::new(1.0, 0.0));
        assert!(matches!(f.inverse_transform(), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn pair_transforms_match_single() {
        let g = TorusGrid::new(16).unwrap();
        let a = random_smooth(&g, 11);
        let b = random_smooth(&g, 12);
        let (fa, fb) = PhysicalField::forward_pair(&a, &b);
        let sa = a.forward_transform();
        let sb = b.forward_transform();
        for i in 0..g.len() {
            assert!((fa.coeffs()[i] - sa.coeffs()[i]).norm() < 1e-10);
            assert!((fb.coeffs()[i] - sb.coeffs()[i]).norm() < 1e-10);
        }
        let (pa, pb) = SpectralField::to_physical_pair(&sa, &sb);
        assert!(max_diff(pa.values(), a.values()) < 1e-12);
        assert!(max_diff(pb.values(), b.values()) < 1e-12);
    }

    #[test]
    fn multiplier_examples() {
        let g = TorusGrid::new(16).unwrap();
        let c2 = PhysicalField::from_fn(&g, |x, _| (2.0 * x).cos()).forward_transform();
        let lap = c2.laplacian().inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, _| -4.0 * (2.0 * x).cos());
        assert!(max_diff(lap.values(), expect.values()) < 1e-12);

        let filt = c2.inverse_helmholtz(0.5).inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, _| 0.5 * (2.0 * x).cos());
        assert!(max_diff(filt.values(), expect.values()) < 1e-13);

        let id = c2.apply_multiplier(|_, _| 1.0);
        assert_eq!(id, c2);
    }

    #[test]
    fn helmholtz_examples() {
        let g = TorusGrid::new(16).unwrap();
        let f = PhysicalField::from_fn(&g, |x, y| (x + y).cos()).forward_transform();
        assert_eq!(f.helmholtz(0.0), f);
        assert_eq!(f.inverse_helmholtz(0.0), f);
        let h = f.helmholtz(1.0).inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, y| 3.0 * (x + y).cos());
        assert!(max_diff(h.values(), expect.values()) < 1e-12);
        let ih = f.inverse_helmholtz(1.0).inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, y| (x + y).cos() / 3.0);
        assert!(max_diff(ih.values(), expect.values()) < 1e-13);
    }

    #[test]
    fn stream_function_examples() {
        let g = TorusGrid::new(16).unwrap();
        let w = PhysicalField::from_fn(&g, |x, _| (2.0 * x).cos()).forward_transform();
        let psi = w.stream_from_omega().unwrap().inverse_transform().unwrap();
        let expect = PhysicalField::from_fn(&g, |x, _| (2.0 * x).cos() / 4.0);
        assert!(max_diff(psi.values(), expect.values()) < 1e-13);

        let z = SpectralField::zeros(&g).stream_from_omega().unwrap();
        assert!(z.max_abs() == 0.0);

        let back = w.stream_from_omega().unwrap().laplacian().scale(-1.0);
        for i in 0..g.len() {
            assert!((back.coeffs()[i] - w.coeffs()[i]).norm() <= 1e-12 * w.max_abs());
        }

        let mut biased = w.clone();
        biased.set_coeff(0, 0, Complex64::new(3.0, 0.0));
        assert!(matches!(biased.stream_from_omega(), Err(Error::NonzeroMean { .. })));
    }

    #[test]
    fn dealias_examples() {
        let g = TorusGrid::new(32).unwrap();
        let mut low = SpectralField::zeros(&g);
        low.set_coeff(8, 0, Complex64::new(1.0, 0.5));
        low.set_coeff(-8, 0, Complex64::new(1.0, -0.5));
        low.set_coeff(3, -8, Complex64::new(0.0, 2.0));
        low.set_coeff(-3, 8, Complex64::new(0.0, -2.0));
        assert_eq!(low.dealias(), low);

        let mut nyq = SpectralField::zeros(&g);
        nyq.set_coeff(16, 0, Complex64::new(1.0, 0.0));
        assert_eq!(nyq.dealias().max_abs(), 0.0);

        let f = PhysicalField::from_fn(&g, |x, y| (x * y).sin()).forward_transform();
        assert_eq!(f.dealias().dealias(), f.dealias());
    }

    #[test]
    fn derivatives_of_harmonics() {
        let g = TorusGrid::new(16).unwrap();
        let f = PhysicalField::from_fn(&g, |x, y| (2.0 * x + 3.0 * y).sin()).forward_transform();
        let fx = f.dx().inverse_transform().unwrap();
        let fy = f.dy().inverse_transform().unwrap();
        let ex = PhysicalField::from_fn(&g, |x, y| 2.0 * (2.0 * x + 3.0 * y).cos());
        let ey = PhysicalField::from_fn(&g, |x, y| 3.0 * (2.0 * x + 3.0 * y).cos());
        assert!(max_diff(fx.values(), ex.values()) < 1e-12);
        assert!(max_diff(fy.values(), ey.values()) < 1e-12);
    }

    #[test]
    fn spectral_and_grid_inner_products_agree() {
        let g = TorusGrid::new(32).unwrap();
        let a = random_smooth(&g, 3);
        let b = random_smooth(&g, 4);
        let direct = a.integral_product(&b);
        let spec = a.forward_transform().inner(&b.forward_transform());
        assert!((direct - spec).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}
