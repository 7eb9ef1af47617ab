//! Exact computations with piecewise-linear circle homeomorphisms.
//!
//! Everything is done over arbitrary-precision rationals: maps are stored as
//! breakpoint lists of a designated lift, and every set, rotation number,
//! certificate and measure this crate reports is exact.

pub mod error;
pub mod exact;
pub mod maps;
pub mod rotation;
pub mod dynamics;
pub mod thompson;
pub mod group;

pub use error::{Error, Result};
pub use exact::{q, Arc, ArcSet, CirclePoint, Rational, SetOp};
pub use maps::{Homeomorphism, LiftMap, PLCircleMap, PLIntervalMap, PLMap, Word};
