//! Exact computation of the Laurent (semi-)norm of dual vectors for
//! multivariate Laurent polynomials, via Newton-polytope geometry.
//!
//! Everything is exact: coefficients and exponents are arbitrary-precision
//! integers, all geometry runs over arbitrary-precision rationals, and no
//! floating point appears anywhere in a decision path.

pub mod lattice;
mod linalg;
pub mod norm;
pub mod oracle;
pub mod parser;
pub mod poly;
pub mod polytope;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// A point with exact rational entries.
pub type RationalVector = Vec<BigRational>;

/// An element of the dual space, acting on exponent vectors by the dot pairing.
pub type DualVector = Vec<BigRational>;
