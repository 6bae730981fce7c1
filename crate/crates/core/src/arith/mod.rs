//! Exact arithmetic: rationals, real quadratic fields, two-variable
//! Laurent polynomials, truncated h-series, and sparse matrices over all
//! of them.

mod invert;
mod laurent;
mod matrix;
mod quad;
mod series;

pub use invert::invert_exact;
pub use laurent::{Exps, LaurentQT};
pub use matrix::{
    h_valuation, invert_truncated, reduce_mod_h, series_order, valuation_from_identity, Scalar,
    SparseMat, Valuation,
};
pub use quad::{Quad, Quad2, Quad5};
pub use series::{iota_substitute, HSeries};

/// Arbitrary-precision rational numbers, the base coefficient type
/// everywhere.
pub type Rat = num_rational::BigRational;

/// Shorthand for `n/d` as a [`Rat`].
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(n.into(), d.into())
}

/// Shorthand for an integer as a [`Rat`].
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(n.into())
}
