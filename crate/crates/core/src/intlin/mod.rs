//! Exact integer and rational linear algebra.
//!
//! This module underpins everything else in the crate: Smith normal form
//! with unimodular transforms, lattice kernels and cokernel structure,
//! membership in integer column spans, exact rational LP feasibility, and
//! Hilbert bases of pointed rational cones.

mod hilbert;
mod lattice;
mod lp;
mod matrix;
mod snf;

pub use hilbert::{hilbert_basis, HilbertError};
pub use lattice::{cokernel_structure, kernel_basis, lattice_membership, AbelianGroup, GroupElement};
pub use lp::{lp_feasible, Constraint, ConstraintKind, LinearSystem};
pub use matrix::IntMatrix;
pub use snf::{smith_normal_form, SnfDecomposition};
