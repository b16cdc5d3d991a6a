//! Rational approximations, continued fractions and fast series for Apéry's
//! constant ζ(3).
//!
//! The crate is organised bottom-up:
//!
//! | Module | Contents |
//! |--------|----------|
//! | [`bigmath`] | exact integers/rationals, harmonic and Bernoulli numbers, π, ln 2, ζ(2k) |
//! | [`classic`] | Apéry's approximants and two historical alternatives |
//! | [`rho`] | the one-parameter family pₙ^(ρ)/qₙ^(ρ): coefficients, recurrence, determinant, series |
//! | [`ratfunc`] | the rational function F_{n,1}^(ρ)(z), its partial fractions and special values |
//! | [`contfrac`] | irregular continued fractions, equivalence transforms, the three ζ(3) fractions |
//! | [`zoo`] | partial sums of every ζ(3) series at arbitrary precision |
//! | [`analysis`] | error sequences, exponential fits, and the irrationality certificate |
//! | [`suite`] | exact-identity verification suites used by the command-line tool |
//!
//! Exact quantities use [`rug::Integer`] / [`rug::Rational`]; real values use
//! [`rug::Float`] with an explicit precision.

pub mod analysis;
pub mod bigmath;
pub mod classic;
pub mod contfrac;
mod error;
pub mod ratfunc;
pub mod rho;
pub mod suite;
pub mod zoo;

pub use error::{Error, Result};
