//! Witt vectors of bounded length over rings of rational sections.

pub mod universal;
pub mod vector;

pub use universal::Op;
pub use vector::{ord_p, Level, VMode, WittVector};
