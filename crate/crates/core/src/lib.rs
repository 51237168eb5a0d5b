//! Exact analysis of linear fractional vector optimization problems.
//!
//! A problem instance asks to minimize `m` ratios of affine functions
//! `f_i(x) = (a_i^T x + alpha_i) / (b_i^T x + beta_i)` over a polyhedron
//! `K = {x : Cx <= d}` on which every denominator is positive. This crate
//! decides, with arbitrary-precision rational arithmetic throughout,
//! whether such a problem is *pathological* (every efficient solution has
//! unbounded trade-off ratios), certifies individual efficient points as
//! properly efficient, and produces machine-checkable witnesses for every
//! verdict.
//!
//! The crate is `no_std` compatible (requires `alloc`); the `std` feature,
//! enabled by default, only adds `std::error::Error` impls.
//!
//! Module map:
//! - [`model`]: problem representation, evaluation, differentiation, validation
//! - [`ratlp`]: exact two-phase simplex kernel with certificates
//! - [`cone`]: recession cones and homogeneous strict-feasibility queries
//! - [`analysis`]: pathology certificates, properness scans, ratio probes
//!
//! All types are immutable after construction and all operations are pure
//! functions, so shared problem data can be analyzed concurrently.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod cone;
pub mod linalg;
pub mod model;
pub mod ratlp;

use alloc::vec::Vec;

pub use num_rational::BigRational;

/// The sole scalar type of the crate: an exact, always-reduced fraction of
/// arbitrary-precision integers with positive denominator.
pub type Rational = BigRational;

/// Shorthand constructor: `rat(n, d)` is the exact fraction `n/d`.
///
/// Panics if `d == 0`. The result is reduced and has a positive denominator.
pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

/// Converts a slice of integers into a rational vector.
pub fn rats(xs: &[i64]) -> Vec<Rational> {
    xs.iter().map(|&x| rat(x, 1)).collect()
}
