//! Exact scalars and circle subsets.

pub mod arcs;
pub mod rational;

pub use arcs::{Arc, ArcSet, CirclePoint, SetOp};
pub use rational::{q, Rational};
