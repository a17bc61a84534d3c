//! Exact arithmetic over finite fields: fields, sparse polynomials with an optional
//! radicial scale, monomial-denominator sections, gcd refinement and the unit-ideal test.

pub mod field;
pub mod gcd;
pub mod groebner;
pub mod poly;
pub mod section;

pub use field::{Elem, Field};
pub use gcd::{gcd, gcd_and_refine, valuation, Refinement};
pub use groebner::unit_ideal_test;
pub use poly::{var_names, Poly};
pub use section::RationalSection;
