//! Exact PL homeomorphisms of the circle and the interval.

mod circle;
mod interval;
pub mod io;
mod lift;
mod word;

pub use circle::PLCircleMap;
#[cfg(test)]
pub(crate) use circle::merge_sorted;
pub use interval::PLIntervalMap;
pub use io::PLMap;
pub use lift::LiftMap;
pub use word::{Homeomorphism, Letter, Word};
