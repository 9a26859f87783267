//! Exact algebra for the dyadic Steenrod squares `Jq^k`.
//!
//! `Jq` is the ring endomorphism of `Q_2[x1, ..., xn]` fixing constants and
//! sending each variable `x` to `x + x^2`; `Jq^k` is its degree-`k` graded
//! piece. This crate evaluates those operations exactly over the rational
//! subfield of `Q_2`, discovers relations among composites of them by exact
//! linear algebra, computes the associated norms as filtration valuations,
//! decides the hit problem with certificates and solves constant-coefficient
//! equations `theta(zeta) = b` by power-series recursion.
//!
//! The crate is `no_std` and only needs `alloc`. Text formats (the polynomial
//! and operator grammars) live here; JSON, files and the command line live in
//! the `jqforge` crate.

#![no_std]

extern crate alloc;

pub mod action;
pub mod error;
pub mod hit;
pub mod linalg;
pub mod norms;
pub mod opalg;
pub mod poly;
pub mod relations;
pub mod scalar;
pub mod series;

mod text;

pub use error::{Error, Result};
pub use opalg::{ClassicalElement, ClassicalWord, OpElement, OpWord, SymbolicPoly};
pub use poly::{MultiIndex, Polynomial};
pub use scalar::{Dyadic, Valuation};
pub use series::TruncatedSeries;
