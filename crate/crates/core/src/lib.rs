//! Hopfion-family solutions of the Weyl, Maxwell and Dirac equations built
//! from spinorial generating functions, together with the numerical
//! machinery that checks them: finite-difference residuals, quadrature
//! oracles, Hopf-map geometry and field-line topology.

#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision, clippy::needless_range_loop)]

pub mod cli;
pub mod error;
pub mod fieldlines;
pub mod hopf;
pub mod oracle;
pub mod quad;
pub mod solutions;
pub mod spacetime;
pub mod special;
pub mod spinor;
pub mod verify;

pub use error::{Error, Result};
pub use spacetime::{SpacetimePoint, C64};
