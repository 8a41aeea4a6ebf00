//! Lattice reduction, integer-relation guessing, and reconstruction of
//! algebraic equations satisfied by a series.

mod algdep;
mod algebraic;
mod lll;

pub use algdep::{algdep, algdep_with_delta};
pub use algebraic::{
    interpolate, reconstruct_algebraic, solve_closed_form, verify_annihilation, AlgdepConfig,
    AlgebraicEquation, AlgebraicReconstruction,
};
pub use lll::lll_reduce;
