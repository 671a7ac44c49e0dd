//! Exact-arithmetic toolkit for cross-intersecting pair systems of sets and
//! of subspaces over small finite fields.
//!
//! The crate provides, bottom to top:
//!
//! * [`exactnum`] — q-integers, q-factorials, and Gaussian (q-binomial)
//!   coefficients, as exact integers and as polynomials in q;
//! * [`gfq`] — table-backed arithmetic for GF(q), q a prime power up to 16;
//! * [`subspace`] — canonical RREF subspaces of F_q^n, lattice operations,
//!   and exhaustive enumeration of all j-dimensional subspaces;
//! * [`pairsystems`] — set-pair and subspace-pair systems with verifiers
//!   for the classical cross-intersection conditions;
//! * [`bounds`] — exact evaluation of the associated sums and size caps;
//! * [`counting`] — extension counts with a brute-force oracle and the
//!   disjoint-family machinery behind the weighted-sum bound;
//! * [`extremal`] — the coordinate-subspace lift and exhaustive search for
//!   the largest systems at desk scale.
//!
//! Every numeric claim in this crate is exact: no floating point is used
//! anywhere, so equality and tightness checks are decidable comparisons.

pub mod bounds;
pub mod counting;
pub mod error;
pub mod exactnum;
pub mod extremal;
pub mod gfq;
pub mod pairsystems;
pub mod subspace;

#[cfg(test)]
pub(crate) mod fixtures;

pub use error::{Error, Result};
