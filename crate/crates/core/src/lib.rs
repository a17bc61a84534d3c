//! Wild ramification invariants, cleanliness certificates, blow-up resolutions and
//! characteristic cycles of rank-one sheaves on affine charts with coordinate boundary.

pub mod algebra;
pub mod blowup;
pub mod cli;
pub mod conductors;
pub mod cycles;
pub mod error;
pub mod geometry;
pub mod par;
pub mod witt;

pub use error::{Error, Result};
