//! Exact computational algebra for finitely presented fine monoids and for
//! the combinatorics of decorated dual graphs with contact data.
//!
//! Everything here is exact: matrices carry arbitrary-precision integers,
//! linear programs are solved over the rationals, and scalar data lives in a
//! multiplicative group of rationals with formal roots and rational phases.
//! There is no floating point anywhere in this crate.
//!
//! The crate is organized in five layers:
//!
//! - [`intlin`]: integer/rational linear algebra (Smith normal form, lattice
//!   kernels and cokernels, lattice membership, exact LP feasibility, Hilbert
//!   bases of pointed rational cones).
//! - [`monoid`]: finitely presented fine commutative monoids (groupification,
//!   word problem, sharpness, saturation, duals, integral pushouts).
//! - [`logcurve`]: decorated dual graphs, contact data, the associated basic
//!   monoid, tropical feasibility, saturation counting and cross-checks.
//! - [`slb`]: systems of line bundles over a point, given by exact scalar
//!   data per generator and exact unit data per relation, with a complete
//!   consistency decision procedure.
//! - [`oracle`]: independent brute-force reference implementations used by
//!   the test suite. They share no algorithms with the modules they check.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod intlin;
pub mod logcurve;
pub mod monoid;
pub mod oracle;
pub mod slb;

pub use intlin::{AbelianGroup, IntMatrix, LinearSystem, SnfDecomposition};
pub use logcurve::{BasicMonoid, DecoratedDualGraph};
pub use monoid::{MonoidElement, MonoidPresentation, SaturationResult};
pub use slb::{ExactScalar, ExactUnit, SaturationDatum, SlbPointPresentation};
