//! Numerical laboratory for Gaussian space-frequency decay.
//!
//! The crate is organised around five subsystems:
//!
//! * [`numerics`] -- uniform symmetric grids, the `e^{-2 pi i x xi}` Fourier
//!   convention, trapezoidal quadrature and the Hermite orthonormal system
//!   (`F h_n = (-i)^n h_n`).
//! * [`gain`] -- exact-rational implementations of the decay-gain bootstrap
//!   recurrences, their companion Jacobi-ordered system, the tridiagonal
//!   spectral data and the limiting gain vector `g_k(0) = (2k+3)/(2k+4)`.
//! * [`decay`] -- Gaussian-weighted functionals `C_a^p`, class membership for
//!   `E_a^p`, pointwise decay fitting, a-priori bound evaluators, the moment
//!   envelope optimiser, bad-set measurement and Laplace support estimation.
//! * [`oscillator`] -- the fractional Fourier transform (Hermite multiplier
//!   and integral kernel), harmonic-oscillator and free-Schroedinger
//!   propagation, their correspondence, and the `Omega_{a,eps}(t)` decay curve.
//! * [`families`] -- Laplace-transform and chirped-Gaussian families with
//!   closed-form Fourier images and end-to-end decay checks.

pub mod decay;
pub mod error;
pub mod families;
pub mod gain;
pub mod numerics;
pub mod oscillator;

pub use error::Error;
pub type Result<T> = std::result::Result<T, Error>;
