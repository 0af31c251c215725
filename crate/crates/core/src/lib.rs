//! Exact combinatorics of matroids presented by their lattices of flats.
//!
//! The crate computes chromatic and characteristic polynomials, volume
//! polynomials on the lattice of flats, samples the ample cone cut out by
//! strictly submodular set functions, and certifies that Hessians of
//! derivatives of volume polynomials have exactly one positive eigenvalue.
//! Chaining those certificates yields log-concavity of the coefficient
//! sequence of the characteristic polynomial of every matroid in scope.
//!
//! All invariant computations are exact (big rationals); floating point
//! appears only in the power-iteration frontend of [`lorentz::perron`] and in
//! numeric cross-checks inside tests.

pub mod charpoly;
pub mod cone;
pub mod corpus;
pub mod graphs;
pub mod lorentz;
pub mod matroid;
pub mod polyalg;
pub mod symmat;
pub mod unipoly;
pub mod volume;

pub use num::{BigInt, BigRational};

/// Shorthand used throughout: exact arbitrary-precision rational.
pub type Rational = num::BigRational;

pub(crate) fn rat_int(n: i64) -> Rational {
    Rational::from_integer(num::BigInt::from(n))
}
