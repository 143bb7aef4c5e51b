//! Gaussian-weighted functionals, E_a^p class membership, pointwise decay
//! fitting, a-priori bound evaluators, the moment-envelope optimiser,
//! bad-set measurement, and numeric Laplace support estimation.

use num_complex::Complex64;
use serde::Serialize;
use std::f64::consts::PI;

use crate::numerics::{fourier_transform, Direction, Grid, SampledFunction};
use crate::{Error, Result};

/// Floor below which samples are ignored by envelope fits.
pub const FIT_FLOOR: f64 = 1e-14;

/// Fraction of the tail-decile contribution that flags divergence.
pub const TAIL_RATIO_THRESHOLD: f64 = 0.5;

/// Weighted norm `C_a^2(f) = (integral |f|^2 e^{2 a pi x^2} dx)^{1/2}`.
///
/// Each term is accumulated in the log domain, since the Gaussian weight
/// overflows and `|f|^2` underflows long before their product does.
/// Quadrature cannot return infinity, so divergence is inferred
/// structurally from the positive support of the integrand (samples lost
/// to underflow carry no evidence): the outer decile of that support must
/// decay against the decile just inside it, and must not carry more than
/// half of the integral.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedNormReport {
    pub a: f64,
    pub value: f64,
    pub tail_ratio: f64,
    pub divergent: bool,
}

pub fn weighted_l2(f: &SampledFunction, a: f64) -> WeightedNormReport {
    let grid = f.grid();
    // samples at or below the transform's roundoff floor carry no evidence
    // either; the Gaussian weight would otherwise blow the floor up into a
    // spurious divergent tail
    let floor = f.noise_floor();
    let terms: Vec<f64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = v.norm();
            if m <= floor || m == 0.0 {
                0.0
            } else {
                let x = grid.point(i);
                (grid.weight(i).ln() + 2.0 * m.ln() + 2.0 * a * PI * x * x).exp()
            }
        })
        .collect();
    let support = terms
        .iter()
        .enumerate()
        .filter(|(_, &t)| t > 0.0)
        .map(|(i, _)| grid.point(i).abs())
        .fold(0.0, f64::max);
    let mut total = 0.0f64;
    let mut outer = 0.0f64;
    let mut inner = 0.0f64;
    for (i, &t) in terms.iter().enumerate() {
        let r = grid.point(i).abs();
        total += t;
        if r >= 0.9 * support {
            outer += t;
        } else if r >= 0.8 * support {
            inner += t;
        }
    }
    let tail_ratio = if total > 0.0 { outer / total } else { 0.0 };
    let divergent = total > 0.0
        && (outer >= 0.9 * inner || tail_ratio > TAIL_RATIO_THRESHOLD);
    WeightedNormReport {
        a,
        value: total.sqrt(),
        tail_ratio,
        divergent,
    }
}

/// Weighted sup `sup |f(x)| e^{a pi x^2}`, accumulated in the log domain,
/// with a monotone-trend test on the outer decile of the positive support:
/// a non-decaying trend there marks the sup as not certified.
#[derive(Debug, Clone, Serialize)]
pub struct WeightedSupReport {
    pub a: f64,
    pub value: f64,
    pub trending_up: bool,
}

pub fn weighted_sup(f: &SampledFunction, a: f64) -> WeightedSupReport {
    let grid = f.grid();
    let floor = f.noise_floor();
    let logs: Vec<f64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let m = v.norm();
            if m <= floor || m == 0.0 {
                f64::NEG_INFINITY
            } else {
                let x = grid.point(i);
                m.ln() + a * PI * x * x
            }
        })
        .collect();
    let support = logs
        .iter()
        .enumerate()
        .filter(|(_, &w)| w.is_finite())
        .map(|(i, _)| grid.point(i).abs())
        .fold(0.0, f64::max);
    let mut max_log = f64::NEG_INFINITY;
    let mut outer = f64::NEG_INFINITY;
    let mut inner = f64::NEG_INFINITY;
    for (i, &w) in logs.iter().enumerate() {
        let r = grid.point(i).abs();
        max_log = max_log.max(w);
        if r >= 0.9 * support {
            outer = outer.max(w);
        } else if r >= 0.8 * support {
            inner = inner.max(w);
        }
    }
    WeightedSupReport {
        a,
        value: max_log.exp(),
        // a flat weighted profile (boundary case, sup attained but finite)
        // must not count as a trend; require genuine log-scale growth
        trending_up: outer.is_finite() && outer > inner + 1e-6,
    }
}

/// Fitted pointwise model `|f(x)| ~ c_hat e^{-b_hat pi x^2}` on a window.
#[derive(Debug, Clone, Serialize)]
pub struct DecayFit {
    pub b_hat: f64,
    pub c_hat: f64,
    pub window: (f64, f64),
    pub residual: f64,
}

/// Least-squares fit of `log |f|` against `-pi x^2` over `|x|` in the
/// window, using only local maxima of `|f|` (the upper envelope) when enough
/// of them exist, so chirped and Hermite functions with zeros fit cleanly.
pub fn fit_gaussian_decay(f: &SampledFunction, window: (f64, f64)) -> Result<DecayFit> {
    let grid = f.grid();
    let vals = f.values();
    let n = grid.len();
    let in_window = |i: usize| {
        let r = grid.point(i).abs();
        r >= window.0 && r <= window.1 && vals[i].norm() > FIT_FLOOR
    };

    let candidates: Vec<usize> = (0..n).filter(|&i| in_window(i)).collect();
    if candidates.len() < 32 {
        return Err(Error::InsufficientPoints {
            found: candidates.len(),
            need: 32,
        });
    }

    let maxima: Vec<usize> = candidates
        .iter()
        .copied()
        .filter(|&i| {
            i > 0
                && i + 1 < n
                && vals[i].norm() > vals[i - 1].norm()
                && vals[i].norm() >= vals[i + 1].norm()
        })
        .collect();
    let used: &[usize] = if maxima.len() >= 8 { &maxima } else { &candidates };

    // linear regression of y = ln|f| on u = pi x^2
    let m = used.len() as f64;
    let mut su = 0.0;
    let mut sy = 0.0;
    let mut suu = 0.0;
    let mut suy = 0.0;
    for &i in used {
        let x = grid.point(i);
        let u = PI * x * x;
        let y = vals[i].norm().ln();
        su += u;
        sy += y;
        suu += u * u;
        suy += u * y;
    }
    let denom = m * suu - su * su;
    let slope = (m * suy - su * sy) / denom;
    let intercept = (sy - slope * su) / m;

    let b_hat = -slope;
    let c_hat = intercept.exp();
    let residual = used
        .iter()
        .map(|&i| {
            let x = grid.point(i);
            let u = PI * x * x;
            (vals[i].norm().ln() - (intercept + slope * u)).abs()
        })
        .fold(0.0, f64::max);

    Ok(DecayFit {
        b_hat,
        c_hat,
        window,
        residual,
    })
}

/// Default fit window for a grid: `[1, L/2]`.
pub fn default_window(grid: Grid) -> (f64, f64) {
    (1.0, 0.5 * grid.half_extent())
}

/// E_a^p membership record: both the L2 and the sup-weighted criteria, plus
/// the pointwise fits for `f` and `f_hat`.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipReport {
    pub a: f64,
    pub in_e2: bool,
    pub in_einf: bool,
    pub f_l2: WeightedNormReport,
    pub fhat_l2: WeightedNormReport,
    pub f_sup: WeightedSupReport,
    pub fhat_sup: WeightedSupReport,
    pub fit_f: DecayFit,
    pub fit_fhat: DecayFit,
    pub truncation: Option<f64>,
}

pub fn class_membership(f: &SampledFunction, a: f64) -> Result<MembershipReport> {
    let fhat = fourier_transform(f, Direction::Forward)?;
    let f_l2 = weighted_l2(f, a);
    let fhat_l2 = weighted_l2(&fhat, a);
    let f_sup = weighted_sup(f, a);
    let fhat_sup = weighted_sup(&fhat, a);
    let fit_f = fit_gaussian_decay(f, default_window(f.grid()))?;
    let fit_fhat = fit_gaussian_decay(&fhat, default_window(fhat.grid()))?;
    Ok(MembershipReport {
        a,
        in_e2: !f_l2.divergent && !fhat_l2.divergent,
        in_einf: !f_sup.trending_up && !fhat_sup.trending_up,
        f_l2,
        fhat_l2,
        f_sup,
        fhat_sup,
        fit_f,
        fit_fhat,
        truncation: fhat.truncation(),
    })
}

fn double_factorial(n: i64) -> f64 {
    // (-1)!! = 1
    let mut acc = 1.0f64;
    let mut m = n;
    while m > 1 {
        acc *= m as f64;
        m -= 2;
    }
    acc
}

/// `A_j = || y^j e^{-a pi y^2} ||_2`, computed from the Gaussian-moment
/// integral `(2j-1)!! / (4 pi a)^j * (2a)^{-1/2}` rather than the printed
/// closed form.
pub fn gaussian_moment_norm(j: u32, a: f64) -> f64 {
    (double_factorial(2 * j as i64 - 1) / (4.0 * PI * a).powi(j as i32)).sqrt()
        * (2.0 * a).powf(-0.25)
}

/// Evaluated a-priori bounds for a function with weighted norms `c2f`,
/// `c2fhat` at level `a`:
///
/// * `sobolev_l2`  bounds `||D^k f||_2`;
/// * `deriv_sup`   bounds `||D^j f||_inf`;
/// * `deriv_l1`    bounds `||D^j f||_1`;
/// * `moment_sup`  bounds `sup |xi^j f_hat|`.
#[derive(Debug, Clone, Serialize)]
pub struct AprioriBounds {
    pub k: u32,
    pub j: u32,
    pub a: f64,
    pub c2f: f64,
    pub c2fhat: f64,
    pub sobolev_l2: f64,
    pub deriv_sup: f64,
    pub deriv_l1: f64,
    pub moment_sup: f64,
}

pub fn apriori_bounds(k: u32, j: u32, a: f64, c2f: f64, c2fhat: f64) -> Result<AprioriBounds> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::ParameterRange(format!("a = {a} not in (0,1)")));
    }
    let tau = 2.0 * PI;

    let sobolev_l2 = if k == 0 {
        c2fhat
    } else {
        let kf = k as f64;
        tau.powi(k as i32) * (kf / (tau * a)).powf(kf / 2.0) * (-kf / 2.0).exp() * c2fhat
    };

    let deriv_sup = tau.powi(j as i32) * gaussian_moment_norm(j, a) * c2fhat;

    let deriv_l1 = if j == 0 {
        // ||f||_1 <= C_a^2(f) / (2a)^{1/4}
        gaussian_moment_norm(0, a) * c2f
    } else {
        let jf = j as f64;
        let c1 = 2.0f64.sqrt(); // ||(1+|x|)^{-1}||_2, exact
        let alpha_j = PI.powf(-jf + 0.5) * tau * (tau * a).powf(-0.5);
        let beta_j = PI.powf(-jf) * tau / a;
        let gamma_j = alpha_j.max(beta_j);
        let t1 = tau.powi(j as i32) * (jf / (tau * a)).powf(jf / 2.0) * (-jf / 2.0).exp() * c2fhat;
        let t2 = tau.powi(j as i32 - 1)
            * jf
            * ((jf - 1.0) / (tau * a)).powf((jf - 1.0) / 2.0)
            * (-(jf - 1.0) / 2.0).exp()
            * c2fhat;
        let t3 = tau.powi(j as i32 - 1)
            * 2.0
            * jf.sqrt()
            * gamma_j.sqrt()
            * (jf / a).powf(jf / 2.0)
            * (-jf / 2.0).exp()
            * (c2f * c2fhat).sqrt();
        c1 * (t1 + t2 + t3)
    };

    let moment_sup = tau.powi(-(j as i32)) * deriv_l1;

    Ok(AprioriBounds {
        k,
        j,
        a,
        c2f,
        c2fhat,
        sobolev_l2,
        deriv_sup,
        deriv_l1,
        moment_sup,
    })
}

/// Envelope optimisation of the moment bounds `B_j |xi|^{-j}`: the exponent
/// `G(j, xi) = (j/2)(ln j - 1 - ln(a pi) - 2 ln|xi|)` is minimised at
/// `j = a pi xi^2` with value `-a pi xi^2 / 2`.
#[derive(Debug, Clone, Serialize)]
pub struct MomentEnvelope {
    pub a: f64,
    pub xi: f64,
    pub j_star: f64,
    pub j_int: u64,
    pub log_bound_continuous: f64,
    pub log_bound_integer: f64,
}

/// `G(j, xi)` with the degenerate convention `G(0, .) = 0` (the j = 0
/// moment bound carries no decay).
pub fn moment_log_bound(j: f64, a: f64, xi: f64) -> f64 {
    if j == 0.0 {
        0.0
    } else {
        0.5 * j * (j.ln() - 1.0 - (a * PI).ln() - 2.0 * xi.abs().ln())
    }
}

pub fn envelope_from_moments(a: f64, xi: f64) -> Result<MomentEnvelope> {
    if !(a > 0.0) {
        return Err(Error::ParameterRange(format!("a = {a} must be positive")));
    }
    let j_star = a * PI * xi * xi;
    let log_bound_continuous = -0.5 * j_star;
    // convexity in j: the integer argmin is one of {0, floor, ceil}
    let mut best_j = 0u64;
    let mut best = moment_log_bound(0.0, a, xi);
    for cand in [j_star.floor() as i64, j_star.ceil() as i64] {
        if cand >= 1 {
            let v = moment_log_bound(cand as f64, a, xi);
            if v < best {
                best = v;
                best_j = cand as u64;
            }
        }
    }
    Ok(MomentEnvelope {
        a,
        xi,
        j_star,
        j_int: best_j,
        log_bound_continuous,
        log_bound_integer: best,
    })
}

/// Grid measure of `{x in I_j : |f(x)| > e^{-beta b pi x^2}}` for
/// `I_j = (sqrt(j), sqrt(j+1))`, next to the Chebyshev-type bound
/// `C_b^2(f) |I_j|^{1/2} e^{-(1-beta) b pi j}`.
#[derive(Debug, Clone, Serialize)]
pub struct BadSetReport {
    pub b: f64,
    pub beta: f64,
    pub j: u64,
    pub measure: f64,
    pub chebyshev_bound: f64,
}

pub fn bad_set_measure(f: &SampledFunction, b: f64, beta: f64, j: u64) -> Result<BadSetReport> {
    if j < 1 {
        return Err(Error::ParameterRange("bad-set index j must be >= 1".into()));
    }
    let lo = (j as f64).sqrt();
    let hi = (j as f64 + 1.0).sqrt();
    let grid = f.grid();
    if hi > grid.half_extent() {
        return Err(Error::IntervalOutsideGrid {
            lo,
            hi,
            extent: grid.half_extent(),
        });
    }
    let mut measure = 0.0f64;
    for (i, v) in f.values().iter().enumerate() {
        let x = grid.point(i);
        if x > lo && x < hi && v.norm() > (-beta * b * PI * x * x).exp() {
            measure += grid.spacing();
        }
    }
    let interval = hi - lo;
    let c = weighted_l2(f, b).value;
    let chebyshev_bound = c * interval.sqrt() * (-(1.0 - beta) * b * PI * j as f64).exp();
    Ok(BadSetReport {
        b,
        beta,
        j,
        measure,
        chebyshev_bound,
    })
}

/// `D^k f` via the Fourier multiplier `(2 pi i xi)^k`.
pub fn spectral_derivative(f: &SampledFunction, k: u32) -> Result<SampledFunction> {
    let mut fhat = fourier_transform(f, Direction::Forward)?;
    let dual = fhat.grid();
    for (i, v) in fhat.values_mut().iter_mut().enumerate() {
        let xi = dual.point(i);
        *v *= Complex64::new(0.0, 2.0 * PI * xi).powu(k);
    }
    fourier_transform(&fhat, Direction::Inverse)
}

/// Fit of the decay of `|D^k f|` against the threshold `a/2 - 0.05`.
#[derive(Debug, Clone, Serialize)]
pub struct DerivativeDecayReport {
    pub k: u32,
    pub a: f64,
    pub fit: DecayFit,
    pub threshold: f64,
    pub passes: bool,
    pub noise_floor: bool,
}

pub fn derivative_decay_check(
    f: &SampledFunction,
    k: u32,
    a: f64,
    window: (f64, f64),
) -> Result<DerivativeDecayReport> {
    if k > 6 {
        return Err(Error::ParameterRange(
            "spectral differentiation limited to k <= 6".into(),
        ));
    }
    let df = spectral_derivative(f, k)?;
    let fit = fit_gaussian_decay(&df, window)?;

    // differentiation noise scale: machine epsilon of the peak magnitude
    let noise = df.sup_norm() * 1e-13;
    let grid = df.grid();
    let smallest_used = df
        .values()
        .iter()
        .enumerate()
        .filter(|(i, v)| {
            let r = grid.point(*i).abs();
            r >= window.0 && r <= window.1 && v.norm() > FIT_FLOOR
        })
        .map(|(_, v)| v.norm())
        .fold(f64::INFINITY, f64::min);
    let noise_floor = smallest_used < 10.0 * noise;

    let threshold = a / 2.0 - 0.05;
    Ok(DerivativeDecayReport {
        k,
        a,
        passes: fit.b_hat >= threshold,
        fit,
        threshold,
        noise_floor,
    })
}

/// Truncated Beurling functional
/// `integral_{[-R,R]^2} |f(x)| |f_hat(y)| e^{2 pi |x y|} dx dy`.
///
/// Samples below `1e-13` of the respective sup are dropped: the kernel
/// `e^{2 pi |x y|}` amplifies the discrete transform's roundoff floor by
/// dozens of orders of magnitude, and anything that floor touches is
/// quadrature noise, not function mass.
pub fn beurling_integral(f: &SampledFunction, radius: f64) -> Result<f64> {
    let grid = f.grid();
    let fhat = fourier_transform(f, Direction::Forward)?;
    let dual = fhat.grid();
    if radius > grid.half_extent() || radius > dual.half_extent() {
        return Err(Error::IntervalOutsideGrid {
            lo: -radius,
            hi: radius,
            extent: grid.half_extent().min(dual.half_extent()),
        });
    }
    let f_floor = 1e-13 * f.sup_norm();
    let g_floor = 1e-13 * fhat.sup_norm();
    let xs: Vec<(f64, f64)> = (0..grid.len())
        .filter(|&i| grid.point(i).abs() <= radius && f.values()[i].norm() > f_floor)
        .map(|i| (grid.point(i), grid.weight(i) * f.values()[i].norm()))
        .collect();
    let ys: Vec<(f64, f64)> = (0..dual.len())
        .filter(|&i| dual.point(i).abs() <= radius && fhat.values()[i].norm() > g_floor)
        .map(|i| (dual.point(i), dual.weight(i) * fhat.values()[i].norm()))
        .collect();
    let mut total = 0.0f64;
    for &(x, wf) in &xs {
        if wf == 0.0 {
            continue;
        }
        let mut row = 0.0f64;
        for &(y, wg) in &ys {
            row += wg * (2.0 * PI * (x * y).abs()).exp();
        }
        total += wf * row;
    }
    Ok(total)
}

/// Estimate the infimum of the support of a measure from samples of its
/// Laplace transform: the slope of the `-log |L(s)|` envelope over the last
/// third of the sample range.
pub fn laplace_support_inf(s_samples: &[f64], l_values: &[Complex64]) -> Result<f64> {
    if s_samples.len() != l_values.len() {
        return Err(Error::ParameterRange(
            "sample and value counts differ".into(),
        ));
    }
    if s_samples.len() < 16 {
        return Err(Error::InsufficientPoints {
            found: s_samples.len(),
            need: 16,
        });
    }
    for w in s_samples.windows(2) {
        if !(w[1] > w[0]) {
            return Err(Error::ParameterRange(
                "s samples must be strictly increasing".into(),
            ));
        }
    }
    let n = s_samples.len();
    let start = n - n / 3;
    let tail: Vec<(f64, f64)> = (start..n)
        .filter(|&i| l_values[i].norm() > 0.0 && l_values[i].norm().is_finite())
        .map(|i| (s_samples[i], -l_values[i].norm().ln()))
        .collect();
    if tail.len() < 8 {
        return Err(Error::OscillationTooSevere { points: tail.len() });
    }

    // envelope points: local minima of -log|L| (local maxima of |L|);
    // for monotone data there are none and all tail points are used
    let minima: Vec<(f64, f64)> = (1..tail.len().saturating_sub(1))
        .filter(|&i| tail[i].1 < tail[i - 1].1 && tail[i].1 <= tail[i + 1].1)
        .map(|i| tail[i])
        .collect();
    let used: &[(f64, f64)] = if minima.len() >= 6 { &minima } else { &tail };

    let m = used.len() as f64;
    let (mut ss, mut sy, mut sss, mut ssy) = (0.0, 0.0, 0.0, 0.0);
    for &(s, y) in used {
        ss += s;
        sy += y;
        sss += s * s;
        ssy += s * y;
    }
    let denom = m * sss - ss * ss;
    let slope = (m * ssy - ss * sy) / denom;
    let intercept = (sy - slope * ss) / m;
    let residual = used
        .iter()
        .map(|&(s, y)| (y - (intercept + slope * s)).abs())
        .fold(0.0, f64::max);
    let span = used.last().unwrap().0 - used.first().unwrap().0;
    if residual > 0.5 * slope.abs().max(1.0) * span {
        return Err(Error::OscillationTooSevere { points: used.len() });
    }
    Ok(slope)
}
