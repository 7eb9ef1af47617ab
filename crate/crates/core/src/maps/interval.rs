use std::fmt;

use super::PLCircleMap;
use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, Rational};

/// An orientation-preserving PL homeomorphism of `[0, 1]`.
///
/// Stored as the circle map that fixes `0`, which is the same data: the
/// breakpoints run from `(0, 0)` to `(1, 1)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLIntervalMap {
    circle: PLCircleMap,
}

impl PLIntervalMap {
    pub fn identity() -> Self {
        PLIntervalMap {
            circle: PLCircleMap::identity(),
        }
    }

    /// Breakpoints including both `(0, 0)` and `(1, 1)`.
    pub fn from_breakpoints(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let (zero, one) = (Rational::zero(), Rational::one());
        match (points.first(), points.last()) {
            (Some(first), Some(last)) if points.len() >= 2 => {
                if first.0 != zero || first.1 != zero {
                    return Err(Error::InvalidMap("interval map must start at (0, 0)".into()));
                }
                if last.0 != one || last.1 != one {
                    return Err(Error::InvalidMap("interval map must end at (1, 1)".into()));
                }
            }
            _ => return Err(Error::InvalidMap("interval map needs at least two breakpoints".into())),
        }
        let mut points = points;
        points.pop();
        let circle = PLCircleMap::from_breakpoints(points)?;
        Ok(PLIntervalMap { circle })
    }

    /// Reinterprets a circle map fixing `0` as a map of `[0, 1]`.
    pub fn from_circle(circle: PLCircleMap) -> Result<Self> {
        if !circle.lift_at_zero().is_zero() {
            return Err(Error::InvalidMap("circle map does not fix 0".into()));
        }
        Ok(PLIntervalMap { circle })
    }

    /// The same homeomorphism viewed on the circle (fixing `0`).
    pub fn as_circle(&self) -> &PLCircleMap {
        &self.circle
    }

    pub fn breakpoints(&self) -> Vec<(Rational, Rational)> {
        let mut pts: Vec<_> = self
            .circle
            .breakpoints()
            .map(|(x, y)| (x.clone(), y.clone()))
            .collect();
        pts.push((Rational::one(), Rational::one()));
        pts
    }

    pub fn eval(&self, t: &Rational) -> Rational {
        self.circle.lift(t)
    }

    pub fn eval_inverse(&self, t: &Rational) -> Rational {
        self.circle.lift_inverse(t)
    }

    pub fn compose(&self, other: &PLIntervalMap) -> PLIntervalMap {
        PLIntervalMap {
            circle: self.circle.compose(&other.circle),
        }
    }

    pub fn inverse(&self) -> PLIntervalMap {
        PLIntervalMap {
            circle: self.circle.inverse(),
        }
    }

    pub fn power(&self, n: i64) -> PLIntervalMap {
        PLIntervalMap {
            circle: self.circle.power(n),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.circle.is_identity()
    }

    /// Fixed points in `[0, 1]`, as a subset of the circle (with `1 ≡ 0`).
    pub fn fixed_set(&self) -> ArcSet {
        self.circle.fixed_set()
    }

    /// Orbitals: maximal open subintervals of `(0, 1)` moved by the map.
    pub fn orbitals(&self) -> Vec<(Rational, Rational)> {
        let support = self.circle.support();
        if support.is_full() {
            unreachable!("interval maps fix 0");
        }
        support
            .arcs()
            .iter()
            .map(|a| {
                let end = if a.end().value().is_zero() {
                    Rational::one()
                } else {
                    a.end().value().clone()
                };
                (a.start().value().clone(), end)
            })
            .collect()
    }

    /// Conjugates into the arc `(start, start + len)` by the affine map
    /// `[0, 1] -> arc`, extending by the identity elsewhere on the circle.
    pub fn squeeze_into(&self, arc: &Arc) -> PLCircleMap {
        let len = arc.length();
        let mut points: Vec<(Rational, Rational)> = self
            .circle
            .breakpoints()
            .map(|(x, y)| (x * &len, y * &len))
            .collect();
        if len < Rational::one() {
            points.push((len.clone(), len));
        }
        let at_zero = PLCircleMap::from_breakpoints(points).expect("squeezed map is valid");
        let shift = PLCircleMap::rotation(arc.start().value());
        shift.compose(&at_zero).compose(&shift.inverse())
    }
}

impl fmt::Debug for PLIntervalMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLIntervalMap[")?;
        for (i, (x, y)) in self.breakpoints().iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}
