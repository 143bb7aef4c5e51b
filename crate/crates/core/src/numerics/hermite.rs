use num_complex::Complex64;
use std::f64::consts::PI;

use super::{Grid, SampledFunction};
use crate::{Error, Result};

/// Hermite functions normalised so that they are orthonormal in L2 and
/// `F h_n = (-i)^n h_n` in the `e^{-2 pi i x xi}` convention.
/// `h_0(x) = 2^{1/4} e^{-pi x^2}`.
#[derive(Debug, Clone)]
pub struct HermiteBasis {
    grid: Grid,
    /// samples[n][i] = h_n(x_i); each h_n real-valued.
    samples: Vec<Vec<f64>>,
    tol: f64,
}

/// Evaluate `h_n` at a single point by the three-term recurrence
/// `h_{n+1}(x) = 2 sqrt(pi/(n+1)) x h_n(x) - sqrt(n/(n+1)) h_{n-1}(x)`.
pub fn hermite_eval(n: usize, x: f64) -> f64 {
    let mut prev = 0.0f64;
    let mut cur = 2.0f64.powf(0.25) * (-PI * x * x).exp();
    for m in 0..n {
        let m = m as f64;
        let next = 2.0 * (PI / (m + 1.0)).sqrt() * x * cur - (m / (m + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// Build the orthonormal Hermite system `h_0..h_{n_max}` on a grid.
///
/// The recurrence is run once per grid point with per-degree renormalisation
/// against quadrature to suppress drift.  Fails if the grid cannot hold the
/// top degree (boundary mass above 1e-10).
pub fn build_hermite_basis(n_max: usize, grid: Grid) -> Result<HermiteBasis> {
    let tol = 1e-8;
    let n = grid.len();
    let mut samples: Vec<Vec<f64>> = Vec::with_capacity(n_max + 1);

    let mut prev: Vec<f64> = vec![0.0; n];
    let mut cur: Vec<f64> = grid
        .points()
        .map(|x| 2.0f64.powf(0.25) * (-PI * x * x).exp())
        .collect();
    for degree in 0..=n_max {
        // classical turning point of h_degree in these units
        let turning = ((2.0 * degree as f64 + 1.0) / (2.0 * PI)).sqrt();
        if turning > 0.8 * grid.half_extent() {
            return Err(Error::GridUnderResolved {
                degree,
                detail: format!(
                    "turning point {turning:.2} near half-extent {:.2}",
                    grid.half_extent()
                ),
            });
        }

        let norm_sq: f64 = cur
            .iter()
            .enumerate()
            .map(|(i, v)| grid.weight(i) * v * v)
            .sum();
        let norm = norm_sq.sqrt();
        if !(norm.is_finite() && norm > 0.0) || (norm - 1.0).abs() > 1e-3 {
            return Err(Error::GridUnderResolved {
                degree,
                detail: format!("quadrature norm {norm:.6} drifted from 1"),
            });
        }
        for v in cur.iter_mut() {
            *v /= norm;
        }
        // boundary mass proxy: |h(L)|^2 must be negligible
        let edge = cur[0].abs().max(cur[n - 1].abs());
        if edge * edge > 1e-10 {
            return Err(Error::GridUnderResolved {
                degree,
                detail: format!("boundary value {edge:.3e} too large"),
            });
        }
        samples.push(cur.clone());

        let m = degree as f64;
        let next: Vec<f64> = grid
            .points()
            .enumerate()
            .map(|(i, x)| {
                2.0 * (PI / (m + 1.0)).sqrt() * x * cur[i] - (m / (m + 1.0)).sqrt() * prev[i]
            })
            .collect();
        prev = std::mem::take(&mut cur);
        cur = next;
    }

    Ok(HermiteBasis { grid, samples, tol })
}

impl HermiteBasis {
    pub fn grid(&self) -> Grid {
        self.grid
    }

    pub fn max_degree(&self) -> usize {
        self.samples.len() - 1
    }

    pub fn tolerance(&self) -> f64 {
        self.tol
    }

    /// Samples of `h_n` on the basis grid.
    pub fn sampled(&self, n: usize) -> SampledFunction {
        let values = self.samples[n]
            .iter()
            .map(|&v| Complex64::new(v, 0.0))
            .collect();
        SampledFunction::new(self.grid, values).expect("basis samples are finite")
    }

    pub fn raw(&self, n: usize) -> &[f64] {
        &self.samples[n]
    }

    /// Maximum off-identity entry of the Gram matrix.
    pub fn gram_defect(&self) -> f64 {
        let mut worst = 0.0f64;
        for m in 0..self.samples.len() {
            for n in m..self.samples.len() {
                let ip: f64 = self.samples[m]
                    .iter()
                    .zip(&self.samples[n])
                    .enumerate()
                    .map(|(i, (a, b))| self.grid.weight(i) * a * b)
                    .sum();
                let target = if m == n { 1.0 } else { 0.0 };
                worst = worst.max((ip - target).abs());
            }
        }
        worst
    }
}

/// Projection of a function onto the basis, with the truncation residual
/// `||f - sum a_n h_n||_2` reported.
#[derive(Debug, Clone)]
pub struct Projection {
    pub coeffs: Vec<Complex64>,
    pub residual: f64,
}

/// Coefficients `a_n = <f, h_n>` under grid quadrature.
pub fn hermite_project(f: &SampledFunction, basis: &HermiteBasis) -> Result<Projection> {
    if f.grid() != basis.grid() {
        return Err(Error::GridMismatch(
            "projection requires the basis grid".into(),
        ));
    }
    let grid = f.grid();
    let coeffs: Vec<Complex64> = (0..=basis.max_degree())
        .map(|n| {
            f.values()
                .iter()
                .zip(basis.raw(n))
                .enumerate()
                .map(|(i, (v, h))| v * h * grid.weight(i))
                .sum()
        })
        .collect();
    let synth = hermite_synthesize(&coeffs, basis)?;
    let residual = synth.l2_distance(f)?;
    Ok(Projection { coeffs, residual })
}

/// Pointwise sum `sum_n a_n h_n` on the basis grid.
pub fn hermite_synthesize(coeffs: &[Complex64], basis: &HermiteBasis) -> Result<SampledFunction> {
    if coeffs.len() > basis.max_degree() + 1 {
        return Err(Error::CoefficientLength {
            given: coeffs.len(),
            basis: basis.max_degree() + 1,
        });
    }
    let n = basis.grid().len();
    let mut values = vec![Complex64::new(0.0, 0.0); n];
    for (deg, a) in coeffs.iter().enumerate() {
        if a.norm_sqr() == 0.0 {
            continue;
        }
        for (i, h) in basis.raw(deg).iter().enumerate() {
            values[i] += a * h;
        }
    }
    SampledFunction::new(basis.grid(), values)
}
