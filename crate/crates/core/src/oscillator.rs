//! Fractional Fourier transforms (Hermite-multiplier and integral-kernel
//! methods), harmonic-oscillator and free-Schrodinger propagation, the
//! correspondence between them, and the Vemuri decay curve Omega(t).

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::numerics::{hermite_project, hermite_synthesize, HermiteBasis, SampledFunction};
use crate::{Error, Result};

/// Default Hermite truncation degree for evolution operators.
pub const HERMITE_TRUNCATION: usize = 64;

/// Maximum admissible projection residual before evolution refuses to run.
pub const PROJECTION_TOL: f64 = 1e-8;

/// Below this |sin(beta)| the integral kernel degenerates; only the exact
/// multiples of pi have special-case fallbacks.
pub const KERNEL_SIN_FLOOR: f64 = 1e-6;

fn check_projection(p: &crate::numerics::Projection) -> Result<()> {
    if p.residual > PROJECTION_TOL {
        return Err(Error::ProjectionResidual {
            residual: p.residual,
            tol: PROJECTION_TOL,
        });
    }
    Ok(())
}

/// Multiplier form of the fractional Fourier transform: coefficient `n`
/// picks up `e^{-i n beta}`.  Exact on coefficients; the normative
/// definition of `F_beta`.
pub fn frft_coeffs(coeffs: &[Complex64], beta: f64) -> Vec<Complex64> {
    coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -(n as f64) * beta))
        .collect()
}

/// `F_beta f` via projection onto the Hermite basis.
pub fn frft_hermite(f: &SampledFunction, beta: f64, basis: &HermiteBasis) -> Result<SampledFunction> {
    let p = hermite_project(f, basis)?;
    check_projection(&p)?;
    hermite_synthesize(&frft_coeffs(&p.coeffs, beta), basis)
}

/// `F_beta f` via dense quadrature of the chirped integral kernel
///
/// ```text
/// F_beta f(x) = e^{i(theta pi/2 - beta/2)} / sqrt(|sin beta|)
///               * e^{i pi x^2 cot beta}
///               * integral e^{-2 pi i (x y csc beta - y^2 cot beta / 2)} f(y) dy
/// ```
///
/// with `theta = sign(sin beta)`.  Near multiples of pi the kernel
/// degenerates; exactly at `0` / `pi` (mod 2 pi) the identity / reflection
/// fallbacks apply, anywhere else in the floor region an error is returned.
pub fn frft_kernel(f: &SampledFunction, beta: f64) -> Result<SampledFunction> {
    let s = beta.sin();
    if s.abs() <= KERNEL_SIN_FLOOR {
        let wrapped = beta.rem_euclid(2.0 * PI);
        if wrapped < 1e-9 || wrapped > 2.0 * PI - 1e-9 {
            return Ok(f.clone());
        }
        if (wrapped - PI).abs() < 1e-9 {
            // reflection, periodic index convention matching the FFT
            let n = f.grid().len();
            let vals: Vec<Complex64> = (0..n).map(|i| f.values()[(n - i) % n]).collect();
            return SampledFunction::new(f.grid(), vals);
        }
        return Err(Error::DegenerateAngle { beta });
    }

    let grid = f.grid();
    let n = grid.len();
    let cot = beta.cos() / s;
    let csc = 1.0 / s;
    let theta = s.signum();
    let prefactor = Complex64::from_polar(1.0 / s.abs().sqrt(), theta * PI / 2.0 - beta / 2.0);

    // inner chirp applied once: g(y) = w(y) f(y) e^{i pi y^2 cot}
    let g: Vec<Complex64> = (0..n)
        .map(|i| {
            let y = grid.point(i);
            f.values()[i] * grid.weight(i) * Complex64::from_polar(1.0, PI * y * y * cot)
        })
        .collect();

    let vals: Vec<Complex64> = (0..n)
        .map(|j| {
            let x = grid.point(j);
            let mut acc = Complex64::new(0.0, 0.0);
            for (i, gi) in g.iter().enumerate() {
                let y = grid.point(i);
                acc += gi * Complex64::from_polar(1.0, -2.0 * PI * x * y * csc);
            }
            acc * prefactor * Complex64::from_polar(1.0, PI * x * x * cot)
        })
        .collect();
    SampledFunction::new(grid, vals)
}

/// Agreement record between the two FrFT methods at a fixed angle.  The
/// kernel's phase prefactor convention is not self-verified, so only the
/// modulus is asserted; the measured constant phase offset is reported.
#[derive(Debug, Clone, Serialize)]
pub struct FrftComparison {
    pub beta: f64,
    pub phase_offset: f64,
    pub max_modulus_diff: f64,
    pub l2_modulus_diff: f64,
}

pub fn compare_frft_methods(
    f: &SampledFunction,
    beta: f64,
    basis: &HermiteBasis,
) -> Result<FrftComparison> {
    let h = frft_hermite(f, beta, basis)?;
    let k = frft_kernel(f, beta)?;
    let phase_offset = k.inner(&h)?.arg();
    let grid = f.grid();
    let mut max_modulus_diff = 0.0f64;
    let mut l2 = 0.0f64;
    for i in 0..grid.len() {
        let d = k.values()[i].norm() - h.values()[i].norm();
        max_modulus_diff = max_modulus_diff.max(d.abs());
        l2 += grid.weight(i) * d * d;
    }
    Ok(FrftComparison {
        beta,
        phase_offset,
        max_modulus_diff,
        l2_modulus_diff: l2.sqrt(),
    })
}

/// Parameters of a complex Gaussian `amplitude * e^{-pi exponent x^2}`
/// carrying an extra unimodular chirp `e^{i pi chirp x^2}`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct ComplexGaussianParams {
    pub amplitude: Complex64,
    pub exponent: Complex64,
    pub chirp: f64,
}

impl ComplexGaussianParams {
    pub fn eval(&self, x: f64) -> Complex64 {
        let q = Complex64::new(0.0, self.chirp) - self.exponent;
        self.amplitude * (q * PI * x * x).exp()
    }

    /// Modulus decay rate: |value| = |amplitude| e^{-pi decay x^2}.
    pub fn decay_exponent(&self) -> f64 {
        self.exponent.re
    }
}

/// Closed form of `F_beta g_lambda` for `g_lambda = e^{-lambda pi x^2}`:
/// exponent `csc^2(beta) / (lambda - i cot beta)` with the kernel's
/// prefactor and output chirp.
///
/// The `- i cot beta` sign is fixed by the kernel's inner chirp
/// `e^{+2 pi i y^2 cot(beta)/2}` and independently by the free-propagator
/// oracle: `e^{i t Delta} g_lambda` has parameter `lambda/(1 + 4 pi i t
/// lambda)`, and unwinding the dilation at `beta = arctan(4 pi t)` forces
/// this branch.  In particular the decay exponent at `beta = -pi/4` for
/// `lambda = a + i sqrt(1-a^2)`, `a = tanh(2 alpha)`, is exactly
/// `tanh(alpha)`.
pub fn frft_gaussian_closed_form(lambda: Complex64, beta: f64) -> Result<ComplexGaussianParams> {
    if lambda.re <= 0.0 {
        return Err(Error::ParameterRange(format!(
            "Re(lambda) = {} must be positive",
            lambda.re
        )));
    }
    let s = beta.sin();
    if s.abs() <= KERNEL_SIN_FLOOR {
        return Err(Error::DegenerateAngle { beta });
    }
    let cot = beta.cos() / s;
    let csc2 = 1.0 / (s * s);
    let denom = lambda - Complex64::new(0.0, cot);
    let exponent = csc2 / denom;
    let theta = s.signum();
    let amplitude = Complex64::from_polar(1.0 / s.abs().sqrt(), theta * PI / 2.0 - beta / 2.0)
        / denom.sqrt();
    Ok(ComplexGaussianParams {
        amplitude,
        exponent,
        chirp: cot,
    })
}

/// Hermite-coefficient state of the harmonic-oscillator flow
/// `Phi(x,t) = sum_n e^{2(2n+1) pi i t} a_n h_n(x)`.
#[derive(Debug, Clone)]
pub struct OscillatorState {
    coeffs: Vec<Complex64>,
    t: f64,
}

impl OscillatorState {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        OscillatorState { coeffs, t: 0.0 }
    }

    /// Project a sampled function to obtain the initial state.
    pub fn from_function(f: &SampledFunction, basis: &HermiteBasis) -> Result<Self> {
        let p = hermite_project(f, basis)?;
        check_projection(&p)?;
        Ok(OscillatorState::new(p.coeffs))
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn time(&self) -> f64 {
        self.t
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn synthesize(&self, basis: &HermiteBasis) -> Result<SampledFunction> {
        hermite_synthesize(&self.coeffs, basis)
    }
}

/// Flow the state to absolute time `t`: multiplier `e^{2(2n+1) pi i (t-t0)}`
/// per coefficient.  The moduli |a_n| are invariant.
pub fn oscillator_evolve(state: &OscillatorState, t: f64) -> OscillatorState {
    let dt = t - state.t;
    let coeffs = state
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, 2.0 * (2.0 * n as f64 + 1.0) * PI * dt))
        .collect();
    OscillatorState { coeffs, t }
}

/// `sum_n b_n h_n(u)` by the three-term recurrence, for scaled-argument
/// synthesis off the basis grid.
fn hermite_sum(coeffs: &[Complex64], u: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    let mut prev = 0.0f64;
    let mut cur = 2.0f64.powf(0.25) * (-PI * u * u).exp();
    for (n, b) in coeffs.iter().enumerate() {
        acc += b * cur;
        let next = 2.0 * (PI / (n as f64 + 1.0)).sqrt() * u * cur
            - (n as f64 / (n as f64 + 1.0)).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    acc
}

/// Free-Schrodinger propagation `e^{i t Delta} f` applied per Hermite mode:
///
/// ```text
/// e^{i t Delta} h_n(x) = (1+4 pi i t)^{-1/2}
///                        * exp[4 pi^2 i t x^2 / (1+16 pi^2 t^2)]
///                        * e^{-i n arctan(4 pi t)} h_n(x / sqrt(1+16 pi^2 t^2))
/// ```
///
/// The free evolution dilates by `sqrt(1+16 pi^2 t^2)`, so the result is
/// sampled on the correspondingly dilated grid: a fixed window would lose
/// most of the mass already at moderate times.
pub fn schrodinger_evolve(
    f: &SampledFunction,
    t: f64,
    basis: &HermiteBasis,
) -> Result<SampledFunction> {
    let p = hermite_project(f, basis)?;
    check_projection(&p)?;
    let u = 4.0 * PI * t;
    let denom = 1.0 + u * u;
    let scale = denom.sqrt();
    let prefactor = Complex64::new(1.0, u).sqrt().inv();
    let mode_angle = -u.atan();
    let modulated: Vec<Complex64> = p
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, n as f64 * mode_angle))
        .collect();
    let grid = f.grid();
    let out_grid = crate::numerics::Grid::new(grid.len(), grid.spacing() * scale)?;
    SampledFunction::from_fn(out_grid, |x| {
        let chirp = Complex64::from_polar(1.0, 4.0 * PI * PI * t * x * x / denom);
        prefactor * chirp * hermite_sum(&modulated, x / scale)
    })
}

/// L2 distance between `e^{i t Delta} f` and the right-hand side of the
/// oscillator correspondence, built independently from the oscillator flow
/// at time `s = arctan(-4 pi t) / (4 pi)`:
///
/// ```text
/// e^{i t Delta} f(x) = (1+4 pi i t)^{-1/2}
///                      * exp[4 pi^2 i t x^2 / (1+16 pi^2 t^2)]
///                      * e^{-2 pi i s} Phi(x / sqrt(1+16 pi^2 t^2), s)
/// ```
pub fn correspondence_residual(f: &SampledFunction, t: f64, basis: &HermiteBasis) -> Result<f64> {
    let lhs = schrodinger_evolve(f, t, basis)?;
    let state = OscillatorState::from_function(f, basis)?;
    let u = 4.0 * PI * t;
    let s = (-u).atan() / (4.0 * PI);
    let evolved = oscillator_evolve(&state, s);
    let denom = 1.0 + u * u;
    let scale = denom.sqrt();
    let prefactor =
        Complex64::new(1.0, u).sqrt().inv() * Complex64::from_polar(1.0, -2.0 * PI * s);
    let rhs = SampledFunction::from_fn(lhs.grid(), |x| {
        let chirp = Complex64::from_polar(1.0, 4.0 * PI * PI * t * x * x / denom);
        prefactor * chirp * hermite_sum(evolved.coeffs(), x / scale)
    })?;
    lhs.l2_distance(&rhs)
}

/// Least positive root `R` of `(a - eps)/4 = R / (2 (1 + R^2))`:
/// `R = (1 - sqrt(1 - c^2)) / c` with `c = a - eps`; always in (0,1).
pub fn vemuri_r(a: f64, eps: f64) -> Result<f64> {
    let c = a - eps;
    if !(c > 0.0 && c < 1.0) {
        return Err(Error::ParameterRange(format!(
            "a - eps = {c} must lie in (0,1)"
        )));
    }
    Ok((1.0 - (1.0 - c * c).sqrt()) / c)
}

/// Exceptional-time test `t in {1/16 + k/8, k integer}` at 1e-12 distance.
pub fn is_exceptional_time(t: f64) -> bool {
    let m = (t - 1.0 / 16.0) * 8.0;
    (m - m.round()).abs() / 8.0 < 1e-12
}

/// Exact exceptional-time test for rational `t = num/den`:
/// membership in `{1/16 + k/8}` means `16t - 1` is an even integer.
pub fn is_exceptional_time_rational(num: i64, den: i64) -> bool {
    if den == 0 {
        return false;
    }
    let p = 16 * num - den; // 16t - 1 = p/den
    p % den == 0 && (p / den) % 2 == 0
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OmegaPoint {
    pub t: f64,
    pub omega: f64,
    pub pi_r: f64,
    pub exceptional: bool,
}

/// `Omega(t) = (1+16 pi^2 t^2) 4 pi R / (2 [(4 pi t + 1)^2 + R^2 (4 pi t - 1)^2])`
/// with minimum `pi R` attained exactly at `t = 1/(4 pi)`.
pub fn vemuri_omega(a: f64, eps: f64, t: f64) -> Result<OmegaPoint> {
    let r = vemuri_r(a, eps)?;
    let u = 4.0 * PI * t;
    let omega = (1.0 + u * u) * 4.0 * PI * r
        / (2.0 * ((u + 1.0) * (u + 1.0) + r * r * (u - 1.0) * (u - 1.0)));
    Ok(OmegaPoint {
        t,
        omega,
        pi_r: PI * r,
        exceptional: is_exceptional_time(t),
    })
}

/// Lower bound for `Omega(t) - pi R` away from the minimum:
/// `(1-R^2)(4 pi t - 1)^2 / (2[(4 pi t + 1)^2 + R^2 (4 pi t - 1)^2])`.
pub fn omega_gap_lower_bound(r: f64, t: f64) -> f64 {
    let u = 4.0 * PI * t;
    (1.0 - r * r) * (u - 1.0) * (u - 1.0)
        / (2.0 * ((u + 1.0) * (u + 1.0) + r * r * (u - 1.0) * (u - 1.0)))
}

#[derive(Debug, Clone, Serialize)]
pub struct VemuriCurve {
    pub a: f64,
    pub eps: f64,
    pub r: f64,
    pub samples: Vec<OmegaPoint>,
}

pub fn vemuri_curve(a: f64, eps: f64, t_min: f64, t_max: f64, points: usize) -> Result<VemuriCurve> {
    if points < 2 || !(t_max > t_min) {
        return Err(Error::ParameterRange(
            "curve needs t_max > t_min and at least 2 points".into(),
        ));
    }
    let r = vemuri_r(a, eps)?;
    let samples = (0..points)
        .map(|i| {
            let t = t_min + (t_max - t_min) * i as f64 / (points - 1) as f64;
            vemuri_omega(a, eps, t)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VemuriCurve { a, eps, r, samples })
}

impl VemuriCurve {
    /// Golden-section refinement of the minimum over the sampled window.
    pub fn refine_minimum(&self) -> (f64, f64) {
        let mut lo = self.samples.first().map(|p| p.t).unwrap_or(0.0);
        let mut hi = self.samples.last().map(|p| p.t).unwrap_or(1.0);
        let phi = (5.0f64.sqrt() - 1.0) / 2.0;
        let omega_at =
            |t: f64| vemuri_omega(self.a, self.eps, t).map(|p| p.omega).unwrap_or(f64::INFINITY);
        let mut c = hi - phi * (hi - lo);
        let mut d = lo + phi * (hi - lo);
        let (mut fc, mut fd) = (omega_at(c), omega_at(d));
        for _ in 0..200 {
            if fc < fd {
                hi = d;
                d = c;
                fd = fc;
                c = hi - phi * (hi - lo);
                fc = omega_at(c);
            } else {
                lo = c;
                c = d;
                fc = fd;
                d = lo + phi * (hi - lo);
                fd = omega_at(d);
            }
            if hi - lo < 1e-14 {
                break;
            }
        }
        let t = 0.5 * (lo + hi);
        (t, omega_at(t))
    }
}
