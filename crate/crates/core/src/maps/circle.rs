use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, CirclePoint, Rational};

/// A degree-one, orientation-preserving piecewise-linear homeomorphism of
/// the circle with rational data.
///
/// The map is stored through one designated lift `F: R -> R` with
/// `F(t + 1) = F(t) + 1`: the breakpoints `(x_i, F(x_i))` for
/// `0 = x_0 < x_1 < ... < x_k < 1`, normalized so that `F(0)` lies in
/// `[0, 1)`. The last segment runs from `(x_k, F(x_k))` to `(1, F(0) + 1)`.
/// Collinear interior breakpoints are always removed, so two maps are equal
/// as functions exactly when their breakpoint lists are equal.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PLCircleMap {
    xs: Vec<Rational>,
    ys: Vec<Rational>,
    // slopes[i] is the slope on [xs[i], xs[i + 1]] (or [xs[k], 1]); a function of xs/ys
    slopes: Vec<Rational>,
}

impl PLCircleMap {
    pub fn identity() -> Self {
        Self::rotation(&Rational::zero())
    }

    /// `t -> t + angle (mod 1)`.
    pub fn rotation(angle: &Rational) -> Self {
        PLCircleMap {
            xs: vec![Rational::zero()],
            ys: vec![angle.fract()],
            slopes: vec![Rational::one()],
        }
    }

    /// Validates a breakpoint list of a designated lift and brings it to
    /// canonical form.
    pub fn from_breakpoints(points: Vec<(Rational, Rational)>) -> Result<Self> {
        let invalid = |m: String| Err(Error::InvalidMap(m));
        let Some((x0, y0)) = points.first() else {
            return invalid("no breakpoints".into());
        };
        if !x0.is_zero() {
            return invalid(format!("first abscissa must be 0, got {x0}"));
        }
        if y0.is_negative() || *y0 >= Rational::one() {
            return invalid(format!("F(0) must lie in [0, 1), got {y0}"));
        }
        for w in points.windows(2) {
            if w[1].0 <= w[0].0 {
                return invalid(format!("abscissas not increasing at {}", w[1].0));
            }
            if w[1].1 <= w[0].1 {
                return invalid(format!("ordinates not increasing at x = {}", w[1].0));
            }
        }
        let (xk, yk) = points.last().expect("nonempty");
        if *xk >= Rational::one() {
            return invalid(format!("abscissa {xk} outside [0, 1)"));
        }
        if *yk >= y0 + &Rational::one() {
            return invalid(format!(
                "lift breaks degree one: F({xk}) = {yk} is not below F(0) + 1"
            ));
        }
        let (xs, ys) = points.into_iter().unzip();
        Ok(Self::from_lift_values(xs, ys))
    }

    /// Builds the canonical map from lift values at sorted abscissas in
    /// `[0, 1)` starting with `0`. The values may belong to any lift; they are
    /// shifted by an integer so that `F(0)` lands in `[0, 1)`.
    pub(crate) fn from_lift_values(xs: Vec<Rational>, mut ys: Vec<Rational>) -> Self {
        debug_assert!(xs.first().is_some_and(Rational::is_zero));
        debug_assert_eq!(xs.len(), ys.len());
        let shift = ys[0].floor();
        if !shift.is_zero() {
            for y in &mut ys {
                *y -= &shift;
            }
        }
        let n = xs.len();
        let end_y = &ys[0] + &Rational::one();
        let slopes: Vec<Rational> = (0..n)
            .map(|i| {
                let (x1, y1) = if i + 1 < n {
                    (&xs[i + 1], &ys[i + 1])
                } else {
                    (&Rational::one(), &end_y)
                };
                (y1 - &ys[i]) / (x1 - &xs[i])
            })
            .collect();
        let keep: Vec<bool> = (0..n).map(|i| i == 0 || slopes[i - 1] != slopes[i]).collect();
        if keep.iter().all(|&k| k) {
            return PLCircleMap { xs, ys, slopes };
        }
        let mut out = PLCircleMap {
            xs: Vec::new(),
            ys: Vec::new(),
            slopes: Vec::new(),
        };
        for (((x, y), s), k) in xs.into_iter().zip(ys).zip(slopes).zip(keep) {
            if k {
                out.xs.push(x);
                out.ys.push(y);
                out.slopes.push(s);
            }
        }
        out
    }

    /// Number of stored breakpoints (including the one at `0`).
    pub fn len(&self) -> usize {
        self.xs.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn breakpoints(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.xs.iter().zip(&self.ys)
    }

    pub fn abscissas(&self) -> &[Rational] {
        &self.xs
    }

    pub fn ordinates(&self) -> &[Rational] {
        &self.ys
    }

    /// Slope of each affine piece, the last one being the wraparound piece.
    pub fn slopes(&self) -> &[Rational] {
        &self.slopes
    }

    /// `F(0)` of the designated lift.
    pub fn lift_at_zero(&self) -> &Rational {
        &self.ys[0]
    }

    pub fn is_identity(&self) -> bool {
        self.xs.len() == 1 && self.ys[0].is_zero()
    }

    /// Is this a rigid rotation?
    pub fn is_rotation(&self) -> bool {
        self.xs.len() == 1
    }

    fn segment_end(&self, i: usize) -> (Rational, Rational) {
        if i + 1 < self.xs.len() {
            (self.xs[i + 1].clone(), self.ys[i + 1].clone())
        } else {
            (Rational::one(), &self.ys[0] + &Rational::one())
        }
    }

    /// The designated lift at any rational `t`.
    pub fn lift(&self, t: &Rational) -> Rational {
        let k = t.floor();
        let r = t - &k;
        let i = self.xs.partition_point(|x| *x <= r) - 1;
        &self.ys[i] + &(&self.slopes[i] * &(r - &self.xs[i])) + k
    }

    /// Inverse of the designated lift.
    pub fn lift_inverse(&self, u: &Rational) -> Rational {
        let k = (u - &self.ys[0]).floor();
        let w = u - &k;
        let i = self.ys.partition_point(|y| *y <= w) - 1;
        &self.xs[i] + &((w - &self.ys[i]) / &self.slopes[i]) + k
    }

    /// The lift at each of the nondecreasing arguments `ts`, in one sweep.
    fn lift_sorted(&self, ts: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(ts.len());
        let mut k: Option<Rational> = None;
        let mut i = 0;
        for t in ts {
            let kt = t.floor();
            if k.as_ref() != Some(&kt) {
                i = 0;
                k = Some(kt);
            }
            let k = k.as_ref().expect("set above");
            let r = t - k;
            while i + 1 < self.xs.len() && self.xs[i + 1] <= r {
                i += 1;
            }
            out.push(&self.ys[i] + &(&self.slopes[i] * &(r - &self.xs[i])) + k);
        }
        out
    }

    /// Inverse lift at each of the nondecreasing arguments `us`, in one sweep.
    fn lift_inverse_sorted(&self, us: &[Rational]) -> Vec<Rational> {
        let mut out = Vec::with_capacity(us.len());
        let mut k: Option<Rational> = None;
        let mut i = 0;
        for u in us {
            let ku = (u - &self.ys[0]).floor();
            if k.as_ref() != Some(&ku) {
                i = 0;
                k = Some(ku);
            }
            let k = k.as_ref().expect("set above");
            let w = u - k;
            while i + 1 < self.ys.len() && self.ys[i + 1] <= w {
                i += 1;
            }
            out.push(&self.xs[i] + &((w - &self.ys[i]) / &self.slopes[i]) + k);
        }
        out
    }

    /// Pointwise action on the circle.
    pub fn apply(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(self.lift(p.value()))
    }

    pub fn apply_inverse(&self, p: &CirclePoint) -> CirclePoint {
        CirclePoint::new(self.lift_inverse(p.value()))
    }

    pub fn image_arc(&self, arc: &Arc) -> Arc {
        arc.image(|p| self.apply(p))
    }

    pub fn image(&self, set: &ArcSet) -> ArcSet {
        set.image(|p| self.apply(p))
    }

    /// `self ∘ other`: `other` acts first.
    pub fn compose(&self, other: &PLCircleMap) -> PLCircleMap {
        let g = other;
        // breakpoints of self, moved into [G(0), G(0) + 1) where G's values live
        let g0 = &g.ys[0];
        let split = self.xs.partition_point(|x| x < g0);
        let targets: Vec<Rational> = self.xs[split..]
            .iter()
            .cloned()
            .chain(self.xs[..split].iter().map(|x| x + &Rational::one()))
            .collect();
        let pre = g.lift_inverse_sorted(&targets);
        let xs = merge_sorted(&g.xs, &pre);
        let gv = g.lift_sorted(&xs);
        let ys = self.lift_sorted(&gv);
        PLCircleMap::from_lift_values(xs, ys)
    }

    pub fn inverse(&self) -> PLCircleMap {
        // images of breakpoints reduced into [0, 1), plus 0 itself
        let one = Rational::one();
        let split = self.ys.partition_point(|y| *y < one);
        let mut us: Vec<Rational> = Vec::with_capacity(self.ys.len() + 1);
        us.extend(self.ys[split..].iter().map(|y| y - &one));
        us.extend(self.ys[..split].iter().cloned());
        if us.first().map_or(true, |u| !u.is_zero()) {
            us.insert(0, Rational::zero());
        }
        let xs = self.lift_inverse_sorted(&us);
        PLCircleMap::from_lift_values(us, xs)
    }

    /// `self^n`; negative powers invert, `n = 0` is the identity.
    pub fn power(&self, n: i64) -> PLCircleMap {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut e = n.unsigned_abs();
        let mut acc = PLCircleMap::identity();
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

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &PLCircleMap) -> PLCircleMap {
        g.compose(self).compose(&g.inverse())
    }

    /// Minimum and maximum of `F(t) - t` for the designated lift; the
    /// extremes of this periodic PL function sit at breakpoints.
    pub fn displacement_range(&self) -> (Rational, Rational) {
        let mut it = self.breakpoints().map(|(x, y)| y - x);
        let first = it.next().expect("at least one breakpoint");
        it.fold((first.clone(), first), |(lo, hi), d| {
            let lo = if d < lo { d.clone() } else { lo };
            let hi = if d > hi { d } else { hi };
            (lo, hi)
        })
    }

    /// `{ t in [0, 1) : F(t) - t = c }` for the designated lift `F`.
    pub fn level_set(&self, c: &Rational) -> ArcSet {
        let mut parts = Vec::new();
        for i in 0..self.xs.len() {
            let (x1, y1) = self.segment_end(i);
            let x0 = &self.xs[i];
            let d0 = &self.ys[i] - x0;
            let d1 = &y1 - &x1;
            let (lo, hi) = if d0 <= d1 { (&d0, &d1) } else { (&d1, &d0) };
            if c < lo || c > hi {
                continue;
            }
            if self.slopes[i] == Rational::one() {
                parts.push((x0.clone(), x1, true, true));
            } else {
                let t = x0 + &((c - &d0) / (&self.slopes[i] - &Rational::one()));
                parts.push((t.clone(), t, true, true));
            }
        }
        ArcSet::from_linear(parts)
    }

    /// `Fix(f)`.
    pub fn fixed_set(&self) -> ArcSet {
        let (lo, hi) = self.displacement_range();
        let (lo, hi) = (lo.ceil_i64(), hi.floor_i64());
        let mut out = ArcSet::empty();
        for m in lo..=hi {
            out = out.union(&self.level_set(&Rational::from_integer(m)));
        }
        out
    }

    /// `Supp(f) = S^1 \ Fix(f)`.
    pub fn support(&self) -> ArcSet {
        self.fixed_set().complement()
    }

    /// Exact equality check of lifts `self ≤ other` style comparisons are done
    /// on a common refinement; this returns the union of both breakpoint sets.
    pub fn common_refinement(&self, other: &PLCircleMap) -> Vec<Rational> {
        merge_sorted(&self.xs, &other.xs)
    }

    /// The restriction to an invariant arc, rescaled affinely to `[0, 1]`.
    /// Both endpoints of the arc must be fixed.
    pub fn restrict_to_arc(&self, arc: &Arc) -> Result<super::PLIntervalMap> {
        let (s, e) = (arc.start(), arc.end());
        if self.apply(s) != *s || self.apply(e) != *e {
            return Err(Error::Precondition(format!(
                "arc {arc} is not invariant: its endpoints are not fixed"
            )));
        }
        let len = arc.length();
        if len.is_zero() {
            return Err(Error::Precondition("cannot restrict to a single point".into()));
        }
        let shift = PLCircleMap::rotation(s.value());
        let moved = shift.inverse().compose(self).compose(&shift);
        let mut points = Vec::new();
        for (x, y) in moved.breakpoints() {
            if *x < len {
                points.push((x / &len, y / &len));
            }
        }
        points.push((Rational::one(), Rational::one()));
        super::PLIntervalMap::from_breakpoints(points)
    }

    /// Lift values at sorted points in `[0, 1)`.
    pub(crate) fn lift_values(&self, ts: &[Rational]) -> Vec<Rational> {
        self.lift_sorted(ts)
    }
}

/// Merge two sorted lists, dropping duplicates.
pub(crate) fn merge_sorted(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out: Vec<Rational> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match x.cmp(y) {
                Ordering::Less => {
                    i += 1;
                    x
                }
                Ordering::Greater => {
                    j += 1;
                    y
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    x
                }
            },
            (Some(x), None) => {
                i += 1;
                x
            }
            (None, Some(y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        if out.last() != Some(next) {
            out.push(next.clone());
        }
    }
    out
}

impl fmt::Debug for PLCircleMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PLCircleMap[")?;
        for (i, (x, y)) in self.breakpoints().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "({x}, {y})")?;
        }
        write!(f, "]")
    }
}
