//! Exact combinatorics of moment-angle manifolds over dual-neighborly
//! polytopes of even dimension.
//!
//! A dual-neighborly polytope of dimension d = 2p with n = 2p + m + 1
//! facets determines a moment-angle manifold Z whose homology is governed
//! by a single integer, the genus g(p, m). This crate computes, in exact
//! arbitrary-precision arithmetic:
//!
//! - face vectors of the polytope, by two independent formulas
//!   ([`facevec`]);
//! - the Euler characteristic and genus of Z, each by several routes that
//!   must agree: cell sums, collapsed binomial forms, cancellation-free
//!   closed sums, and generating-function expansion ([`genus`]);
//! - the genus after arbitrary sequences of book constructions and vertex
//!   truncations ([`ops`]);
//! - brute-force ground truth from cyclic polytopes via Gale's evenness
//!   condition, for verifying all of the above at small sizes
//!   ([`oracle`]).
//!
//! The redundancy is the point: every quantity has at least two
//! independent computations, so the library doubles as a verification
//! harness for itself.

pub mod exactmath;
pub mod facevec;
pub mod genus;
pub mod ops;
pub mod oracle;

pub use exactmath::{ExactInt, ExactRat};
pub use facevec::PolytopeParams;
