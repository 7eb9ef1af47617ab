//! Rotation numbers, recurrence witnesses and rational insertion.

use std::collections::HashMap;
use std::fmt;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{CirclePoint, Rational};
use crate::maps::{LiftMap, PLCircleMap};

/// Default number of iterations for rotation-number enclosures.
pub const DEFAULT_ITERATIONS: u64 = 256;

/// A periodic point proving a rational rotation number: `ĝ^q(ŝ) = ŝ + p`
/// for the hat lift `ĝ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PeriodicWitness {
    pub q: u64,
    pub s: CirclePoint,
    pub p: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RotationResult {
    Exact {
        value: Rational,
        witness: PeriodicWitness,
    },
    /// The rotation number lies in `[lo, hi]`.
    Enclosure {
        lo: Rational,
        hi: Rational,
        iterations: u64,
    },
}

impl RotationResult {
    pub fn exact_value(&self) -> Option<&Rational> {
        match self {
            RotationResult::Exact { value, .. } => Some(value),
            RotationResult::Enclosure { .. } => None,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.exact_value().is_some()
    }

    /// Whether `x` (read mod 1) is consistent with this result.
    pub fn contains(&self, x: &Rational) -> bool {
        match self {
            RotationResult::Exact { value, .. } => x.fract() == *value,
            RotationResult::Enclosure { lo, hi, .. } => {
                let x = x.fract();
                let k = Rational::from_integer(lo.floor_i64());
                let one = Rational::one();
                let mut y = &x + &k;
                while y <= *hi {
                    if y >= *lo {
                        return true;
                    }
                    y += &one;
                }
                false
            }
        }
    }

    /// Checks the witness of an exact result against the map.
    pub fn verify(&self, f: &PLCircleMap) -> bool {
        match self {
            RotationResult::Exact { value, witness } => {
                let PeriodicWitness { q, s, p } = witness;
                let lifted = LiftMap::hat(f).power(*q as i64);
                lifted.eval(s.value()) == s.value() + &Rational::from_integer(*p)
                    && *value == Rational::new(*p, *q as i64).fract()
            }
            RotationResult::Enclosure { lo, hi, .. } => lo <= hi,
        }
    }
}

impl fmt::Display for RotationResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RotationResult::Exact { value, witness } => write!(
                f,
                "exact {} (period {}, witness {})",
                value.to_pq_string(),
                witness.q,
                witness.s.value().to_pq_string()
            ),
            RotationResult::Enclosure { lo, hi, .. } => {
                write!(f, "enclosure [{}, {}]", lo.to_pq_string(), hi.to_pq_string())
            }
        }
    }
}

/// Looks for `s` with `L(s) = s + p` for some integer `p`. Prefers the least
/// attracting solution (slope below 1 on both sides), else the least one.
fn periodic_point(l: &LiftMap) -> Option<(CirclePoint, i64)> {
    let (lo, hi) = l.displacement_range();
    let p = lo.ceil_i64();
    if Rational::from_integer(p) > hi {
        return None;
    }
    let base = l.base();
    let level = base.level_set(&Rational::from_integer(p - l.offset()));
    let xs = base.abscissas();
    let slopes = base.slopes();
    let one = Rational::one();
    let attracting = level.arcs().into_iter().find(|arc| {
        if !arc.is_point() {
            return false;
        }
        let s = arc.start().value();
        let right = xs.partition_point(|x| x <= s) - 1;
        let left = if xs[right] == *s {
            (right + xs.len() - 1) % xs.len()
        } else {
            right
        };
        slopes[left] < one && slopes[right] < one
    });
    attracting
        .map(|arc| arc.start().clone())
        .or_else(|| level.min_point())
        .map(|s| (s, p))
}

fn exact(p: i64, q: u64, s: CirclePoint) -> RotationResult {
    RotationResult::Exact {
        value: Rational::new(p, q as i64).fract(),
        witness: PeriodicWitness { q, s, p },
    }
}

/// Rotation number with the default iteration count for the enclosure.
pub fn rotation_number(f: &PLCircleMap, q_max: u64) -> Result<RotationResult> {
    rotation_number_with(f, q_max, DEFAULT_ITERATIONS)
}

/// Breakpoint count above which iterates are no longer squared just to
/// narrow the candidate periods.
const SQUARING_LIMIT: usize = 1024;

/// Denominator size, in bits, above which squaring stops.
const SQUARING_BITS: u64 = 1024;

fn denominator_bits(f: &PLCircleMap) -> u64 {
    f.breakpoints()
        .map(|(x, y)| x.denom().bits().max(y.denom().bits()))
        .max()
        .unwrap_or(0)
}

/// Periods tried directly before any narrowing.
const DIRECT_PERIODS: u64 = 8;

/// Searches periods `q = 1..=q_max` for a periodic point of the hat lift and
/// returns the first hit; when none exists, encloses the rotation number
/// using `iterations` iterates.
///
/// Small periods are tried directly. Beyond them only periods `q` for which
/// some `p/q` lies in a rigorous enclosure can succeed, so the enclosure is
/// narrowed by repeated squaring and the surviving periods are tried in
/// increasing order.
pub fn rotation_number_with(f: &PLCircleMap, q_max: u64, iterations: u64) -> Result<RotationResult> {
    if q_max == 0 {
        return Err(Error::OutOfRange("q_max must be at least 1".into()));
    }
    if iterations == 0 {
        return Err(Error::OutOfRange("iterations must be at least 1".into()));
    }
    let hat = LiftMap::hat(f);
    if f.is_rotation() {
        // rigid rotations: the period is the denominator of the angle
        let angle = f.lift_at_zero();
        if let (Some(p), Some(q)) = (angle.numer().to_i64(), angle.denom().to_u64()) {
            if q <= q_max {
                return Ok(exact(p, q, CirclePoint::zero()));
            }
        }
    }
    let mut lq = LiftMap::identity();
    for q in 1..=q_max.min(DIRECT_PERIODS) {
        lq = hat.compose(&lq);
        if let Some((s, p)) = periodic_point(&lq) {
            return Ok(exact(p, q, s));
        }
    }
    let (lo, hi) = narrow(&hat, q_max);
    let candidates: Vec<u64> = (DIRECT_PERIODS + 1..=q_max)
        .filter(|&q| {
            let qr = Rational::from_integer(q as i64);
            (&lo * &qr).ceil_int() <= (&hi * &qr).floor_int()
        })
        .collect();
    let log_q = 64 - u64::from(q_max.leading_zeros());
    if (candidates.len() as u64) * 2 * log_q < q_max {
        for &q in &candidates {
            if let Some((s, p)) = periodic_point(&hat.power(q as i64)) {
                return Ok(exact(p, q, s));
            }
        }
    } else if let Some(&last) = candidates.last() {
        for q in DIRECT_PERIODS + 1..=last {
            lq = hat.compose(&lq);
            if candidates.binary_search(&q).is_ok() {
                if let Some((s, p)) = periodic_point(&lq) {
                    return Ok(exact(p, q, s));
                }
            }
        }
    }
    enclosure(&hat, iterations)
}

/// `[min, max]` of `(L(t) - t) / n` for `L = hat^n`; contains the rotation
/// number of the hat lift.
fn bounds(ln: &LiftMap, n: u64) -> (Rational, Rational) {
    let (dlo, dhi) = ln.displacement_range();
    let n = Rational::from_integer(n as i64);
    (dlo / &n, dhi / n)
}

/// Intersects enclosures from `hat^(2^j)` until they separate fractions of
/// denominator at most `q_max`, or the iterates grow too large.
fn narrow(hat: &LiftMap, q_max: u64) -> (Rational, Rational) {
    let (mut lo, mut hi) = bounds(hat, 1);
    let target = Rational::from_integer(q_max as i64).recip() * Rational::from_integer(q_max as i64).recip();
    let mut ln = hat.clone();
    let mut n: u64 = 1;
    while &hi - &lo >= target && n < (1 << 40) {
        if 2 * ln.base().len() > SQUARING_LIMIT || 2 * denominator_bits(ln.base()) > SQUARING_BITS {
            break;
        }
        ln = ln.compose(&ln);
        n *= 2;
        let (l, h) = bounds(&ln, n);
        lo = lo.max(l);
        hi = hi.min(h);
    }
    (lo, hi)
}

fn enclosure(hat: &LiftMap, iterations: u64) -> Result<RotationResult> {
    let ln = hat.power(iterations as i64);
    let (lo, hi) = bounds(&ln, iterations);
    if lo == hi {
        // L^N is a translation, so the rotation number is exactly lo
        if let Some(q) = lo.denom().to_i64().filter(|&q| q <= 1 << 20) {
            if let Some((s, p)) = periodic_point(&hat.power(q)) {
                return Ok(exact(p, q as u64, s));
            }
        }
    }
    Ok(RotationResult::Enclosure { lo, hi, iterations })
}

/// `f̂^n(x̂) = x̂ + k + delta` with `|delta| < ε`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecurrenceWitness {
    pub n: u64,
    pub x: CirclePoint,
    pub k: i64,
    pub delta: Rational,
}

impl RecurrenceWitness {
    pub fn verify(&self, f: &PLCircleMap, eps: &Rational) -> bool {
        let l = LiftMap::hat(f).power(self.n as i64);
        let x = self.x.value();
        l.eval(x) == x + &Rational::from_integer(self.k) + &self.delta
            && self.delta.abs() < *eps
            && self.n >= 1
    }
}

/// Finds a near-return of the orbit of `0` under the hat lift by pigeonhole
/// on a grid of `ceil(1/ε)` cells.
pub fn recurrence_witness(f: &PLCircleMap, eps: &Rational) -> Result<RecurrenceWitness> {
    recurrence_of_lift(&LiftMap::hat(f), eps)
}

fn recurrence_of_lift(l: &LiftMap, eps: &Rational) -> Result<RecurrenceWitness> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::OutOfRange(format!("ε = {eps} must lie in (0, 1)")));
    }
    let cells = eps.recip().ceil_i64();
    let m = Rational::from_integer(cells);
    let mut seen: HashMap<i64, (u64, Rational)> = HashMap::new();
    let mut t = Rational::zero();
    for j in 0u64.. {
        let cell = (t.fract() * &m).floor_i64();
        if let Some((i, ti)) = seen.get(&cell) {
            let (fi, fj) = (ti.floor(), t.floor());
            let delta = t.fract() - ti.fract();
            return Ok(RecurrenceWitness {
                n: j - i,
                x: CirclePoint::new(ti.clone()),
                k: (fj - fi).floor_i64(),
                delta,
            });
        }
        seen.insert(cell, (j, t.clone()));
        t = l.eval(&t);
    }
    unreachable!("pigeonhole bounds the loop by the number of cells")
}

/// Builds `h` with `f̂ < ĥ < ĝ` everywhere and rational rotation number: the
/// midpoint lift, translated by the exact amount that closes up a
/// near-return of its orbit.
pub fn rational_insertion(f: &PLCircleMap, g: &PLCircleMap) -> Result<PLCircleMap> {
    let (fh, gh) = (LiftMap::hat(f), LiftMap::hat(g));
    let xs = f.common_refinement(g);
    let fv = fh.values(&xs);
    let gv = gh.values(&xs);
    let gap = fv
        .iter()
        .zip(&gv)
        .map(|(a, b)| b - a)
        .min()
        .expect("refinement is nonempty");
    if !gap.is_positive() {
        return Err(Error::Precondition(
            "the hat lifts must satisfy f̂ < ĝ everywhere".into(),
        ));
    }
    let eps = &gap / &Rational::from_integer(2);
    let ys: Vec<Rational> = fv.iter().zip(&gv).map(|(a, b)| a.midpoint(b)).collect();
    let h0 = LiftMap::from_lift_values(xs, ys);
    let third = &eps / &Rational::from_integer(3);
    let w = recurrence_of_lift(&h0, &third.min(Rational::new(1, 2)))?;
    let target = w.x.value() + &Rational::from_integer(w.k);
    let t = if w.delta.is_zero() {
        Rational::zero()
    } else if w.delta.is_positive() {
        solve_shift(&h0, w.n, w.x.value(), &target, -&w.delta)
    } else {
        solve_shift(&h0, w.n, w.x.value(), &target, Rational::zero())
    };
    let h = PLCircleMap::from_lift_values(
        h0.base().abscissas().to_vec(),
        h0.base().ordinates().iter().map(|y| y + &t).collect(),
    );
    Ok(h)
}

/// Smallest `t ≥ start` with `(L + t)^n(x) = target`. The left side is
/// continuous and increasing in `t` and lies below `target` at `start`.
/// Walks right through the pieces on which it is affine in `t`.
fn solve_shift(l: &LiftMap, n: u64, x: &Rational, target: &Rational, start: Rational) -> Rational {
    let base = l.base();
    let xs = base.abscissas();
    let slopes = base.slopes();
    let mut t0 = start;
    loop {
        // orbit at t0 with derivative in t; note the segment each point sits in
        let mut z = x.clone();
        let mut dz = Rational::zero();
        let mut next_t: Option<Rational> = None;
        for j in 0..n {
            let k = z.floor();
            let r = &z - &k;
            let i = xs.partition_point(|v| *v <= r) - 1;
            if j > 0 {
                let end = if i + 1 < xs.len() { xs[i + 1].clone() } else { Rational::one() };
                let hit = &t0 + &((&end - &r) / &dz);
                if next_t.as_ref().map_or(true, |b| hit < *b) {
                    next_t = Some(hit);
                }
            }
            z = l.eval(&z) + &t0;
            dz = &slopes[i] * &dz + Rational::one();
        }
        // z(t) = z + dz (t - t0) until next_t
        let root = &t0 + &((target - &z) / &dz);
        match next_t {
            Some(b) if root > b => t0 = b,
            _ => return root,
        }
    }
}
