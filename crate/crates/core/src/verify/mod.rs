//! Numerical verification: finite-difference residuals and invariant checks.

pub mod dispersion;
pub mod fd;
pub mod report;
pub mod residual;
pub mod sample;
pub mod suites;

pub use dispersion::{dispersion_check, mean_square_radius, Density, DispersionFit};
pub use fd::{Field, ResidualConfig, Scheme};
pub use report::{CheckRecord, ResidualStats, VerificationReport};
pub use residual::*;
pub use sample::{sample_points, DEFAULT_SEED};
pub use suites::{run_suites, Suite, SuiteOptions};
