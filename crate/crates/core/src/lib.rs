//! Exact computational machinery for depth certificates in pure Artin
//! groups of spherical type.
//!
//! The pipeline: Coxeter root systems and their Weyl groups
//! ([`coxeter`]), the Lawrence-Krammer matrices over exact Laurent
//! polynomials ([`lkb`]), the substitution `q -> e^h, t -> e^{sqrt(2) h}`
//! into truncated power series ([`arith`]), diagram foldings that carry
//! non-simply-laced types into simply-laced ones ([`folding`]), and the
//! h-adic depth certificates themselves ([`nilpotence`]).

pub mod arith;
pub mod coxeter;
pub mod error;
pub mod folding;
pub mod lkb;
pub mod nilpotence;

pub use error::{Error, Result};
