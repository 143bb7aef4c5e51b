use num_complex::Complex64;
use rustfft::FftPlanner;

use super::{SampledFunction, TRUNCATION_FLOOR};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// Fourier transform in the `e^{-2 pi i x xi}` convention, sampled on the
/// dual grid (spacing `1/(n dx)`).
///
/// The shifted sum `dx * sum_i e^{-+2 pi i x_i xi_j} f(x_i)` reduces to a
/// standard FFT after conjugating both sides with `(-1)^i` phases.  If the
/// input does not decay below the relative floor at the grid boundary, the
/// output carries a truncation warning.
pub fn fourier_transform(f: &SampledFunction, direction: Direction) -> Result<SampledFunction> {
    let grid = f.grid();
    let n = grid.len();
    if n < 8 {
        return Err(Error::GridTooSmall { n, min: 8 });
    }

    let boundary = f.boundary_ratio();

    let mut buf: Vec<Complex64> = f
        .values()
        .iter()
        .enumerate()
        .map(|(i, v)| if i % 2 == 0 { *v } else { -v })
        .collect();

    let mut planner = FftPlanner::new();
    match direction {
        Direction::Forward => planner.plan_fft_forward(n),
        Direction::Inverse => planner.plan_fft_inverse(n),
    }
    .process(&mut buf);

    // (i - n/2)(j - n/2) = ij - (i + j) n/2 + n^2/4; the constant phase is
    // e^{-+ i pi n/2} = +-1 for even n.
    let scale = match direction {
        Direction::Forward => grid.spacing(),
        Direction::Inverse => grid.spacing(),
    };
    let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
    let out: Vec<Complex64> = buf
        .iter()
        .enumerate()
        .map(|(j, v)| {
            let s = if j % 2 == 0 { sign } else { -sign };
            v * s * scale
        })
        .collect();

    let mut result = SampledFunction::new(grid.dual(), out)?;
    result.set_noise_floor(1e-13 * result.sup_norm());
    if boundary > TRUNCATION_FLOOR {
        result.set_truncation(Some(boundary));
    } else {
        result.set_truncation(f.truncation());
    }
    Ok(result)
}
