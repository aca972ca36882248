//! Exact q-calculus library: Gaussian binomials, the Phillips q-Bernstein
//! basis and operator, q-Stirling and higher-order q-Bernoulli numbers, the
//! basis-conversion matrices, an identity-certification engine, and a
//! floating-point approximation harness.
//!
//! All core arithmetic is generic over [`scalar::Scalar`] and runs exactly
//! over [`Rational`] (arbitrary-precision rationals); the [`approx`] harness
//! instantiates `f64` only after weights have been computed exactly.

pub mod algebra;
pub mod approx;
pub mod bernoulli;
pub mod bernstein;
pub mod cli;
pub mod qcore;
pub mod scalar;
pub mod stirling;
pub mod verify;

/// Exact arbitrary-precision rational scalar, the default everywhere.
pub type Rational = num::BigRational;

/// Polynomial over the exact rationals.
pub type RPoly = algebra::Poly<Rational>;

/// Truncated power series over the exact rationals.
pub type RSeries = algebra::TruncSeries<Rational>;

/// Dense rational matrix.
pub type RMatrix = algebra::Matrix<Rational>;

/// Validated rational q in (0, 1].
pub type RQParam = qcore::QParam<Rational>;
