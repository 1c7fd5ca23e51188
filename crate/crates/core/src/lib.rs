//! Exact solver for iterative functional equations `A(A(...A(x)...)) = F(x)`
//! over truncated formal power series.
//!
//! Everything is built on the *composita* of a series: the lower-triangular
//! table `T(n,k) = [x^n] f(x)^k` of coefficients of the series' powers. A
//! functional square root (half-iterate) of `F` is recovered from `F`'s
//! composita by an exact recurrence, and `2^n`-th iterative roots follow by
//! repeated halving. All arithmetic is exact; the default scalar is an
//! arbitrary-precision rational and no floating point is used anywhere.
//!
//! The submodules map onto the pipeline:
//!
//! - [`series`] / [`composita`]: truncated series, composita construction,
//!   composition and scaling transforms, plus a brute-force enumeration
//!   oracle over integer compositions.
//! - [`catalog`]: closed-form compositae for built-in functions (`sin`,
//!   `e^x - 1`, the Catalan generating function, `x + c*x^2`).
//! - [`solver`]: the half-iterate recurrence, iterated roots, the 4-adic
//!   integrality checker and the integer-coefficient scaled solver.
//! - [`verify`]: direct self-composition oracle, comparison reports and the
//!   bundled verification corpus.
//! - [`oeis`]: optional OEIS b-file client with a local cache.
//! - [`json`]: the JSON interchange formats used by the CLI and fixtures.
//!
//! The core types are generic over the coefficient scalar (see
//! [`coeff::Coefficient`]); the crate-root aliases [`Rat`], [`Series`] and
//! [`Composita`] fix the scalar to exact big rationals, which is what the
//! solver, catalog and CLI work with.

pub mod catalog;
pub mod coeff;
pub mod composita;
pub mod error;
pub mod json;
pub mod oeis;
pub mod series;
pub mod solver;
pub mod verify;

/// Exact rational scalar used throughout the concrete pipeline.
pub type Rat = num_rational::BigRational;

/// Arbitrary-precision integer backing [`Rat`].
pub type Int = num_bigint::BigInt;

/// Truncated series over exact rationals.
pub type Series = crate::series::Series<Rat>;

/// Composita triangle over exact rationals.
pub type Composita = crate::composita::Composita<Rat>;

pub use crate::error::Error;
