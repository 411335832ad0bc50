//! Periodic and flip-fixed point counts of sofic flip systems.
//!
//! A sofic shift `X` is given by a labeled graph and a flip `φ` (a
//! homeomorphism with `φ² = id` and `φσ = σ⁻¹φ`) by a symbol involution or a
//! sliding-block rule. The crate builds Krieger's joint state chain of `X`,
//! derives the signed subset matrices `A_k`, `B_k`, `J_k` on each level, and
//! from those evaluates
//!
//! * `p_m`, the number of points of least-or-not period dividing `m`,
//! * `p_{m,n}`, the number of points fixed by both `σ^m` and `σ^n φ`,
//! * the zeta function `ζ_σ` and the generating function `G_{σ,φ}` as exact
//!   rational functions, and `ζ_{σ,φ}` as a truncated power series.
//!
//! Every count can be cross-checked against the brute-force routines in
//! [`oracle`].
//!
//! The numeric layer ([`linalg`], [`poly`], [`rational`], [`power_series`]) is
//! generic over the scalar type; the aliases below fix the exact types the
//! symbolic-dynamics layer uses.

pub mod automata;
pub mod counting;
pub mod error;
pub mod krieger;
pub mod linalg;
pub mod oracle;
pub mod poly;
pub mod power_series;
pub mod presentations;
pub mod rational;
pub mod scalar;
pub mod series;
pub mod signed_subsets;
pub mod system;

use num_bigint::BigInt;
use num_rational::BigRational;

pub use error::{Error, Result};

/// Dense matrix with arbitrary-precision integer entries.
pub type IntMatrix = linalg::Matrix<BigInt>;
/// Polynomial in `t` with integer coefficients.
pub type ZPoly = poly::Polynomial<BigInt>;
/// Polynomial in `t` with exact rational coefficients.
pub type QPoly = poly::Polynomial<BigRational>;
/// Rational function in `t` over the rationals.
pub type QRationalFunction = rational::RationalFunction<BigRational>;
/// Truncated power series with exact rational coefficients.
pub type QSeries = power_series::PowerSeries<BigRational>;
/// Truncated power series with `f64` coefficients, for quick numeric looks.
pub type F64Series = power_series::PowerSeries<f64>;

/// A word over a graph's alphabet, as symbol indices.
pub type Word = Vec<usize>;
