use std::fmt;

use super::PLCircleMap;
use crate::exact::Rational;

/// A lift `t -> F(t) + offset` of a circle map, where `F` is the map's
/// designated lift. Lifts commute with the unit translation.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LiftMap {
    base: PLCircleMap,
    offset: i64,
}

impl LiftMap {
    pub fn new(base: PLCircleMap, offset: i64) -> Self {
        LiftMap { base, offset }
    }

    pub fn identity() -> Self {
        LiftMap::new(PLCircleMap::identity(), 0)
    }

    /// The unit-translation-free "closest to identity" lift of `f`: it has a
    /// fixed point when `f` does, and otherwise satisfies `t < F(t) < t + 1`.
    /// Equivalently, its translation number lies in `[0, 1)`.
    pub fn hat(f: &PLCircleMap) -> Self {
        let (lo, hi) = f.displacement_range();
        // |d(s) - d(t)| < 1 for any lift, so [lo, hi] holds at most one integer
        let m = lo.ceil_i64();
        let offset = if Rational::from_integer(m) <= hi {
            -m
        } else {
            -lo.floor_i64()
        };
        LiftMap::new(f.clone(), offset)
    }

    /// The lift with the given values at sorted abscissas in `[0, 1)`
    /// starting with `0`.
    pub(crate) fn from_lift_values(xs: Vec<Rational>, ys: Vec<Rational>) -> Self {
        let offset = ys[0].floor_i64();
        LiftMap::new(PLCircleMap::from_lift_values(xs, ys), offset)
    }

    /// Values at sorted points of `[0, 1)`.
    pub(crate) fn values(&self, ts: &[Rational]) -> Vec<Rational> {
        let k = Rational::from_integer(self.offset);
        self.base.lift_values(ts).into_iter().map(|y| y + &k).collect()
    }

    pub fn base(&self) -> &PLCircleMap {
        &self.base
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.base.lift(t) + Rational::from_integer(self.offset)
    }

    pub fn eval_inverse(&self, u: &Rational) -> Rational {
        self.base.lift_inverse(&(u - &Rational::from_integer(self.offset)))
    }

    /// The same lift shifted by an integer.
    pub fn shifted(&self, k: i64) -> Self {
        LiftMap::new(self.base.clone(), self.offset + k)
    }

    /// `self ∘ other` as maps of the line.
    pub fn compose(&self, other: &LiftMap) -> LiftMap {
        let base = self.base.compose(&other.base);
        // F(G(t)) differs from the designated lift of f∘g by floor(F(G(0)))
        let carry = self.base.lift(other.base.lift_at_zero()).floor_i64();
        LiftMap::new(base, self.offset + other.offset + carry)
    }

    pub fn inverse(&self) -> LiftMap {
        let base = self.base.inverse();
        let carry = self.base.lift_inverse(&Rational::zero()).floor_i64();
        LiftMap::new(base, carry - self.offset)
    }

    pub fn power(&self, n: i64) -> LiftMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = LiftMap::identity();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.compose(&sq);
            }
        }
        acc
    }

    /// `[U, V] = U V U⁻¹ V⁻¹`; independent of which lifts are chosen.
    pub fn commutator(&self, other: &LiftMap) -> LiftMap {
        self.compose(other)
            .compose(&self.inverse())
            .compose(&other.inverse())
    }

    /// Min and max of `L(t) - t`.
    pub fn displacement_range(&self) -> (Rational, Rational) {
        let (lo, hi) = self.base.displacement_range();
        let k = Rational::from_integer(self.offset);
        (lo + &k, hi + k)
    }
}

impl fmt::Debug for LiftMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LiftMap({:?} {:+})", self.base, self.offset)
    }
}
