use num_complex::Complex64;
use std::io::Write;

use crate::{Error, Result};

/// Relative boundary magnitude above which a transform attaches a truncation
/// warning to its output.
pub const TRUNCATION_FLOOR: f64 = 1e-12;

/// Uniform symmetric grid `x_i = (i - n/2) dx`, `i = 0..n-1`.
///
/// `n` is even, so the grid is symmetric about 0 up to one endpoint; the
/// half-extent is `L = (n/2) dx`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    n: usize,
    dx: f64,
}

impl Grid {
    pub fn new(n: usize, dx: f64) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::GridOddSize { n });
        }
        if n < 8 {
            return Err(Error::GridTooSmall { n, min: 8 });
        }
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(Error::GridBadSpacing { dx });
        }
        Ok(Grid { n, dx })
    }

    /// Grid with `n` points and half-extent `L` (so `dx = 2L/n`).
    pub fn with_extent(n: usize, half_extent: f64) -> Result<Self> {
        Grid::new(n, 2.0 * half_extent / n as f64)
    }

    /// Default laboratory grid: n = 4096, L = 12.  Wide enough that
    /// `e^{-0.05 pi x^2}` tails fall below 1e-9 at the boundary.
    pub fn default_lab() -> Self {
        Grid::with_extent(4096, 12.0).expect("default grid parameters are valid")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn spacing(&self) -> f64 {
        self.dx
    }

    pub fn half_extent(&self) -> f64 {
        (self.n / 2) as f64 * self.dx
    }

    pub fn point(&self, i: usize) -> f64 {
        (i as f64 - (self.n / 2) as f64) * self.dx
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.point(i))
    }

    /// Dual grid for the Fourier transform: same point count, spacing
    /// `1/(n dx)`.
    pub fn dual(&self) -> Grid {
        Grid {
            n: self.n,
            dx: 1.0 / (self.n as f64 * self.dx),
        }
    }

    /// Trapezoidal quadrature weight for point `i`.
    pub fn weight(&self, i: usize) -> f64 {
        if i == 0 || i == self.n - 1 {
            0.5 * self.dx
        } else {
            self.dx
        }
    }
}

/// Complex values sampled on a uniform symmetric grid; the concrete stand-in
/// for `f`, `f_hat`, `Phi(.,t)` and the family evaluations.
#[derive(Debug, Clone)]
pub struct SampledFunction {
    grid: Grid,
    values: Vec<Complex64>,
    /// Relative boundary magnitude when it exceeds [`TRUNCATION_FLOOR`];
    /// attached by transforms, never silently dropped.
    truncation: Option<f64>,
    /// Absolute magnitude below which samples are roundoff, not function
    /// mass; zero for directly sampled data, set by discrete transforms.
    /// Weighted functionals ignore samples under this floor.
    noise_floor: f64,
}

impl SampledFunction {
    pub fn new(grid: Grid, values: Vec<Complex64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::GridMismatch(format!(
                "value count {} != grid size {}",
                values.len(),
                grid.len()
            )));
        }
        for (i, v) in values.iter().enumerate() {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::NonFiniteValue { index: i });
            }
        }
        Ok(SampledFunction {
            grid,
            values,
            truncation: None,
            noise_floor: 0.0,
        })
    }

    /// Sample a scalar function on the grid.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Complex64) -> Result<Self> {
        let values = grid.points().map(f).collect();
        SampledFunction::new(grid, values)
    }

    /// Sample a real-valued function on the grid.
    pub fn from_real_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        SampledFunction::from_fn(grid, |x| Complex64::new(f(x), 0.0))
    }

    /// The Gaussian `g_lambda(x) = e^{-lambda pi x^2}`.
    pub fn gaussian(grid: Grid, lambda: f64) -> Result<Self> {
        SampledFunction::from_real_fn(grid, |x| (-lambda * std::f64::consts::PI * x * x).exp())
    }

    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    pub fn truncation(&self) -> Option<f64> {
        self.truncation
    }

    pub fn set_truncation(&mut self, t: Option<f64>) {
        self.truncation = t;
    }

    pub fn noise_floor(&self) -> f64 {
        self.noise_floor
    }

    pub fn set_noise_floor(&mut self, floor: f64) {
        self.noise_floor = floor;
    }

    /// Relative magnitude of the largest boundary sample.
    pub fn boundary_ratio(&self) -> f64 {
        let max = self.values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return 0.0;
        }
        let edge = self.values[0]
            .norm()
            .max(self.values[self.values.len() - 1].norm());
        edge / max
    }

    /// L2 norm under trapezoidal quadrature.
    pub fn l2_norm(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.weight(i) * v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    /// L2 distance to another function on the same grid.
    pub fn l2_distance(&self, other: &SampledFunction) -> Result<f64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch(
                "l2_distance requires identical grids".into(),
            ));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| self.grid.weight(i) * (a - b).norm_sqr())
            .sum::<f64>()
            .sqrt())
    }

    /// L1 norm under trapezoidal quadrature.
    pub fn l1_norm(&self) -> f64 {
        self.values
            .iter()
            .enumerate()
            .map(|(i, v)| self.grid.weight(i) * v.norm())
            .sum()
    }

    pub fn sup_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// Inner product `<self, other> = integral self * conj(other)`.
    pub fn inner(&self, other: &SampledFunction) -> Result<Complex64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch("inner requires identical grids".into()));
        }
        Ok(self
            .values
            .iter()
            .zip(&other.values)
            .enumerate()
            .map(|(i, (a, b))| a * b.conj() * self.grid.weight(i))
            .sum())
    }

    /// Serialize as CSV with header `x,re,im`, 17 significant digits.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "x,re,im")?;
        for (i, v) in self.values.iter().enumerate() {
            writeln!(w, "{:.16e},{:.16e},{:.16e}", self.grid.point(i), v.re, v.im)?;
        }
        Ok(())
    }
}
