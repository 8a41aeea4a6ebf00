//! Guessing generating functions of integer sequences with exact arithmetic.
//!
//! Methods, in the order the pipeline tries them:
//! - [`rational_fit`]: Padé fitting with degree and size acceptance gates,
//!   plus derivative, logarithmic-derivative and reversion pre-transforms
//! - [`holonomic`]: P-recurrences with polynomial coefficients
//! - [`hypergeom`]: first-order recurrences read as `pFq` series
//! - [`lattice`]: LLL, `algdep`, and reconstruction of algebraic equations
//! - [`euler`]: Euler products through Möbius inversion
//! - [`lookup`]: database search under elementary transformations
//!
//! [`bivariate`] fits triangles, and [`pipeline`] ties everything together
//! for the command line.

pub mod bivariate;
pub mod error;
pub mod euler;
pub mod exact;
pub mod expr;
pub mod holonomic;
pub mod hypergeom;
pub mod lattice;
pub mod lookup;
pub mod pipeline;
pub mod rational_fit;

pub use error::{Error, Result};
