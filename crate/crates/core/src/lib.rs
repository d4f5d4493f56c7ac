//! Exact computation of the Bando–Calabi–Futaki obstruction polynomial
//! `F(x, y, z)` for the projectivized bundle `P(π₁*H_m ⊕ π₂*H_n)` over
//! `CP^m × CP^n`.
//!
//! `F` is built three ways: from its closed form ([`character::compute_f`]),
//! from the localized fixed-point sums ([`character::assemble_f_loc`]) and
//! from truncated power series ([`localization`]). The [`explorer`] module
//! studies its sign and zero locus inside the certified Kähler region.

pub mod arith;
pub mod character;
pub mod error;
pub mod explorer;
pub mod localization;
pub mod poly;
pub mod report;
pub mod verify;

pub use arith::{Integer, Rational};
pub use character::{CharacterPolys, Dims, FixedComponent, KahlerClass};
pub use error::{Error, Result};
pub use poly::{MultiPoly3, TruncSeries2, UniPoly};
