//! The decay-gain bootstrap recurrences, their Jacobi-ordered companion
//! system, the tridiagonal spectral data, and the limiting gain vector.
//!
//! All iterates and the fixed-point solve are exact rationals; floating
//! point appears only in the trigonometric spectral formulas, cross-checked
//! at 1e-12.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;

use crate::{Error, Result};

/// Default cap on numerator/denominator bit length for exact iterates.
pub const RATIONAL_BIT_CAP: u64 = 4096;

/// Update order of the recurrence system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    /// Rows solved top-down using same-stage values for lower rows
    /// (Gauss-Seidel order), exactly as the bootstrap derives them.
    Original,
    /// Companion system using only previous-stage values (Jacobi order);
    /// its iterates sandwich the original ones.
    Auxiliary,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

fn quarter() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(4))
}

/// Decay exponents (as fractions of the ambient weight) for the derivatives
/// `f, f', ..., f^(k)` at one bootstrap stage.
#[derive(Debug, Clone, PartialEq)]
pub struct GainState {
    depth: usize,
    stage: usize,
    theta: Vec<BigRational>,
}

impl GainState {
    /// Initial state: every exponent starts at 1/2.
    pub fn initial(depth: usize) -> Self {
        GainState {
            depth,
            stage: 0,
            theta: vec![half(); depth + 1],
        }
    }

    pub fn from_theta(depth: usize, stage: usize, theta: Vec<BigRational>) -> Result<Self> {
        if theta.len() != depth + 1 {
            return Err(Error::ParameterRange(format!(
                "theta length {} != depth + 1 = {}",
                theta.len(),
                depth + 1
            )));
        }
        Ok(GainState {
            depth,
            stage,
            theta,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn theta(&self) -> &[BigRational] {
        &self.theta
    }

    pub fn theta_f64(&self) -> Vec<f64> {
        self.theta
            .iter()
            .map(|r| r.to_f64().unwrap_or(f64::NAN))
            .collect()
    }

    fn max_bits(&self) -> u64 {
        self.theta
            .iter()
            .map(|r| r.numer().bits().max(r.denom().bits()))
            .max()
            .unwrap_or(0)
    }
}

/// One stage of the recurrence.  The boundary row always uses the constant
/// 1/2 for the `(k+1)`-th derivative: only `f, f', ..., f^(k)` participate.
pub fn step_gain(state: &GainState, variant: Variant) -> GainState {
    let k = state.depth;
    let prev = &state.theta;
    let boundary = half();
    let at = |j: usize| -> &BigRational {
        if j <= k {
            &prev[j]
        } else {
            &boundary
        }
    };

    let mut next: Vec<BigRational> = Vec::with_capacity(k + 1);
    next.push(half() + half() * at(1));
    for j in 1..=k {
        let lower = match variant {
            Variant::Original => next[j - 1].clone(),
            Variant::Auxiliary => prev[j - 1].clone(),
        };
        next.push(half() * lower + half() * at(j + 1));
    }

    GainState {
        depth: k,
        stage: state.stage + 1,
        theta: next,
    }
}

/// Exact trajectory of the first `stages` iterates (including stage 0).
pub fn iterate_gain(depth: usize, stages: usize, variant: Variant) -> Result<Vec<GainState>> {
    iterate_gain_capped(depth, stages, variant, RATIONAL_BIT_CAP)
}

pub fn iterate_gain_capped(
    depth: usize,
    stages: usize,
    variant: Variant,
    bit_cap: u64,
) -> Result<Vec<GainState>> {
    let mut out = Vec::with_capacity(stages + 1);
    out.push(GainState::initial(depth));
    for s in 1..=stages {
        let next = step_gain(out.last().unwrap(), variant);
        if next.max_bits() > bit_cap {
            return Err(Error::RationalOverflow {
                cap: bit_cap,
                stage: s,
            });
        }
        out.push(next);
    }
    Ok(out)
}

/// Closed-form eigendata of the companion tridiagonal matrix with 1/2
/// off-diagonals: `lambda_mu = cos(mu pi / (k+2))` with sine-profile
/// eigenvectors, all of the same norm.
#[derive(Debug, Clone)]
pub struct GainSpectrum {
    depth: usize,
    eigenvalues: Vec<f64>,
    eigenvectors: Vec<Vec<f64>>,
    alpha: f64,
}

pub fn gain_spectrum(depth: usize) -> GainSpectrum {
    let k = depth;
    let m = k + 1;
    let denom = (k + 2) as f64;
    let eigenvalues: Vec<f64> = (1..=m).map(|mu| (mu as f64 * PI / denom).cos()).collect();
    let eigenvectors: Vec<Vec<f64>> = (1..=m)
        .map(|mu| {
            (1..=m)
                .map(|i| ((i * mu) as f64 * PI / denom).sin())
                .collect()
        })
        .collect();
    let alpha = eigenvectors[0]
        .iter()
        .map(|v| v * v)
        .sum::<f64>()
        .sqrt();
    GainSpectrum {
        depth,
        eigenvalues,
        eigenvectors,
        alpha,
    }
}

impl GainSpectrum {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &[Vec<f64>] {
        &self.eigenvectors
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn spectral_radius(&self) -> f64 {
        (PI / (self.depth + 2) as f64).cos()
    }

    /// Max residual `||A v_mu - lambda_mu v_mu||_2` against the explicitly
    /// assembled tridiagonal matrix.
    pub fn eigen_residual(&self) -> f64 {
        let m = self.depth + 1;
        let mut worst = 0.0f64;
        for (lambda, v) in self.eigenvalues.iter().zip(&self.eigenvectors) {
            let mut sq = 0.0;
            for i in 0..m {
                let mut av = 0.0;
                if i > 0 {
                    av += 0.5 * v[i - 1];
                }
                if i + 1 < m {
                    av += 0.5 * v[i + 1];
                }
                let r = av - lambda * v[i];
                sq += r * r;
            }
            worst = worst.max(sq.sqrt());
        }
        worst
    }

    /// Max pairwise deviation from orthogonality and from the common norm.
    pub fn orthogonality_defect(&self) -> f64 {
        let m = self.depth + 1;
        let mut worst = 0.0f64;
        for a in 0..m {
            for b in 0..m {
                let ip: f64 = self.eigenvectors[a]
                    .iter()
                    .zip(&self.eigenvectors[b])
                    .map(|(x, y)| x * y)
                    .sum();
                let target = if a == b { self.alpha * self.alpha } else { 0.0 };
                worst = worst.max((ip - target).abs());
            }
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LimitMethod {
    /// Diagonalised sum over the closed-form eigenpairs (floating point).
    Spectral,
    /// Exact rational solve of `(I - A) G = b`.
    LinearSolve,
}

/// The limiting gain vector `G_k = (g_k(0), ..., g_k(k))`.
#[derive(Debug, Clone)]
pub struct GainLimit {
    depth: usize,
    exact: Option<Vec<BigRational>>,
    values: Vec<f64>,
}

impl GainLimit {
    pub fn depth(&self) -> usize {
        self.depth
    }

    /// Exact components, present for the linear-solve method.
    pub fn exact(&self) -> Option<&[BigRational]> {
        self.exact.as_deref()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

pub fn limit_gain(depth: usize, method: LimitMethod) -> GainLimit {
    match method {
        LimitMethod::LinearSolve => {
            let exact = solve_fixed_point(depth);
            let values = exact
                .iter()
                .map(|r| r.to_f64().expect("gain components are small rationals"))
                .collect();
            GainLimit {
                depth,
                exact: Some(exact),
                values,
            }
        }
        LimitMethod::Spectral => {
            let spec = gain_spectrum(depth);
            let m = depth + 1;
            let mut b = vec![0.0f64; m];
            b[0] += 0.5;
            b[m - 1] += 0.25;
            let alpha_sq = spec.alpha * spec.alpha;
            let mut values = vec![0.0f64; m];
            for mu in 0..m {
                let lambda = spec.eigenvalues[mu];
                let v = &spec.eigenvectors[mu];
                // 1 is never an eigenvalue: |lambda| = |cos(mu pi/(k+2))| < 1
                let vb: f64 = v.iter().zip(&b).map(|(x, y)| x * y).sum();
                let coef = vb / ((1.0 - lambda) * alpha_sq);
                for i in 0..m {
                    values[i] += coef * v[i];
                }
            }
            GainLimit {
                depth,
                exact: None,
                values,
            }
        }
    }
}

/// Exact Thomas solve of the tridiagonal system `(I - A) x = b` with
/// diagonal 1, off-diagonals -1/2, `b = (1/2, 0, ..., 0, 1/4)`.
fn solve_fixed_point(depth: usize) -> Vec<BigRational> {
    let m = depth + 1;
    let mut b = vec![BigRational::zero(); m];
    b[0] += half();
    b[m - 1] += quarter();

    let off = -half();
    // forward elimination
    let mut diag = vec![BigRational::one(); m];
    for i in 1..m {
        let factor = off.clone() / diag[i - 1].clone();
        diag[i] = BigRational::one() - factor.clone() * off.clone();
        let prev_b = b[i - 1].clone();
        b[i] -= factor * prev_b;
    }
    // back substitution
    let mut x = vec![BigRational::zero(); m];
    x[m - 1] = b[m - 1].clone() / diag[m - 1].clone();
    for i in (0..m - 1).rev() {
        x[i] = (b[i].clone() - off.clone() * x[i + 1].clone()) / diag[i].clone();
    }
    x
}

/// Report of the exact sandwich sweep
/// `theta~(mu, l) <= theta(mu, l) <= theta~(mu, 2l + mu - 1)` for `l >= 1`,
/// with equality everywhere at `l = 0`.
///
/// The same-stage ordering lets information travel down all rows of the
/// `theta` system within one stage, while the simultaneous `theta~` update
/// moves one row per stage; the exact relation is a wavefront identity,
/// `theta(mu, l) = theta~(mu, 2l + mu - 1)`, so a uniform single-stage
/// shift on the upper side is not enough.  The smallest counterexample for
/// the uniform shift sits at depth 1: `theta(1,2) = 21/32 > 5/8 =
/// theta~(1,3)`.
#[derive(Debug, Clone)]
pub struct SandwichReport {
    pub depth: usize,
    pub stages: usize,
    /// First `(mu, l)` where the double inequality fails, if any.
    pub first_violation: Option<(usize, usize)>,
}

impl SandwichReport {
    pub fn holds(&self) -> bool {
        self.first_violation.is_none()
    }
}

pub fn sandwich_check(depth: usize, l_max: usize) -> Result<SandwichReport> {
    let original = iterate_gain(depth, l_max, Variant::Original)?;
    let auxiliary = iterate_gain(depth, 2 * l_max + depth, Variant::Auxiliary)?;
    for l in 0..=l_max {
        for mu in 0..=depth {
            let lower = &auxiliary[l].theta()[mu];
            let mid = &original[l].theta()[mu];
            let upper = &auxiliary[if l == 0 { 0 } else { 2 * l + mu - 1 }].theta()[mu];
            if lower > mid || mid > upper {
                return Ok(SandwichReport {
                    depth,
                    stages: l_max,
                    first_violation: Some((mu, l)),
                });
            }
        }
    }
    Ok(SandwichReport {
        depth,
        stages: l_max,
        first_violation: None,
    })
}

/// `g_k(0) = (2k+3)/(2k+4)` as an exact rational.
pub fn gain_zero_closed_form(depth: usize) -> BigRational {
    BigRational::new(
        BigInt::from(2 * depth as i64 + 3),
        BigInt::from(2 * depth as i64 + 4),
    )
}

/// Render a rational as `p/q`.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[allow(dead_code)]
fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
}
