//! Grids, Fourier transform, quadrature and the Hermite orthonormal system.

mod fourier;
mod grid;
mod hermite;

pub use fourier::{fourier_transform, Direction};
pub use grid::{Grid, SampledFunction, TRUNCATION_FLOOR};
pub use hermite::{
    build_hermite_basis, hermite_eval, hermite_project, hermite_synthesize, HermiteBasis,
    Projection,
};
