//! Points, arcs and finite arc sets on the circle `R/Z`.
//!
//! Arcs are read in the positive direction (increasing `t`) from `start` to
//! `end` and carry explicit endpoint flags, so fixed sets (closed) and
//! supports (open) complement each other exactly.
//!
//! Internally an [`ArcSet`] is a sorted list of disjoint linear pieces of
//! `[0, 1)`; an arc that wraps through `0` is stored as two pieces and glued
//! back together when arcs are listed.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use super::rational::Rational;
use crate::error::{Error, Result};

/// A point of the circle, stored as its representative in `[0, 1)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct CirclePoint(Rational);

impl CirclePoint {
    /// Reduces `value` mod 1.
    pub fn new(value: Rational) -> Self {
        CirclePoint(value.fract())
    }

    pub fn zero() -> Self {
        CirclePoint(Rational::zero())
    }

    /// The representative in `[0, 1)` (the "hat" lift of the point).
    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn into_value(self) -> Rational {
        self.0
    }

    /// Length of the positive-direction path from `self` to `other`, in `[0, 1)`.
    pub fn distance_to(&self, other: &CirclePoint) -> Rational {
        (&other.0 - &self.0).fract()
    }
}

impl From<Rational> for CirclePoint {
    fn from(r: Rational) -> Self {
        CirclePoint::new(r)
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

/// A connected proper subset of the circle with rational endpoints.
///
/// `start == end` is either a single point (both ends closed) or the circle
/// punctured at that point (both ends open). The full circle is never an arc.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Arc {
    start: CirclePoint,
    end: CirclePoint,
    closed_left: bool,
    closed_right: bool,
}

impl Arc {
    /// Builds an arc from raw endpoints in `[0, 1]`; `end = 1` is read as `0`
    /// reached after a full positive turn, so `(0, 1)` is the punctured circle.
    pub fn new(start: Rational, end: Rational, closed_left: bool, closed_right: bool) -> Result<Arc> {
        let congruent = (&end - &start).is_integer();
        if congruent && start != end && (closed_left || closed_right) {
            return Err(Error::InvalidArc(format!(
                "arc from {start} to {end} would cover the full circle"
            )));
        }
        if start == end && closed_left != closed_right {
            return Err(Error::InvalidArc(format!(
                "degenerate arc at {start} must be closed or open on both sides"
            )));
        }
        if start == end && !closed_left {
            return Err(Error::InvalidArc(format!(
                "open degenerate arc at {start}; write the punctured circle as ({start},{})",
                &start + &Rational::one()
            )));
        }
        Ok(Arc {
            start: CirclePoint::new(start),
            end: CirclePoint::new(end),
            closed_left,
            closed_right,
        })
    }

    pub fn closed(start: Rational, end: Rational) -> Result<Arc> {
        Arc::new(start, end, true, true)
    }

    pub fn open(start: Rational, end: Rational) -> Result<Arc> {
        Arc::new(start, end, false, false)
    }

    pub fn point(p: CirclePoint) -> Arc {
        Arc {
            start: p.clone(),
            end: p,
            closed_left: true,
            closed_right: true,
        }
    }

    /// `S^1 \ {p}`.
    pub fn punctured(p: CirclePoint) -> Arc {
        Arc {
            start: p.clone(),
            end: p,
            closed_left: false,
            closed_right: false,
        }
    }

    pub fn start(&self) -> &CirclePoint {
        &self.start
    }

    pub fn end(&self) -> &CirclePoint {
        &self.end
    }

    pub fn closed_left(&self) -> bool {
        self.closed_left
    }

    pub fn closed_right(&self) -> bool {
        self.closed_right
    }

    pub fn is_point(&self) -> bool {
        self.start == self.end && self.closed_left
    }

    pub fn is_punctured_circle(&self) -> bool {
        self.start == self.end && !self.closed_left
    }

    pub fn length(&self) -> Rational {
        if self.start == self.end {
            if self.closed_left {
                Rational::zero()
            } else {
                Rational::one()
            }
        } else {
            self.start.distance_to(&self.end)
        }
    }

    pub fn contains(&self, p: &CirclePoint) -> bool {
        if *p == self.start {
            return self.closed_left;
        }
        if *p == self.end {
            return self.closed_right;
        }
        self.start.distance_to(p) < self.length()
    }

    /// Same arc with both endpoints excluded.
    pub fn interior(&self) -> ArcSet {
        if self.is_point() {
            return ArcSet::empty();
        }
        ArcSet::from_arc(&Arc {
            closed_left: false,
            closed_right: false,
            ..self.clone()
        })
    }

    /// The image of the arc under an orientation-preserving homeomorphism,
    /// given its action on points.
    pub fn image(&self, map: impl Fn(&CirclePoint) -> CirclePoint) -> Arc {
        let start = map(&self.start);
        let end = if self.start == self.end {
            start.clone()
        } else {
            map(&self.end)
        };
        Arc {
            start,
            end,
            closed_left: self.closed_left,
            closed_right: self.closed_right,
        }
    }

    fn pieces(&self) -> Vec<Piece> {
        let s = self.start.value().clone();
        let e = self.end.value().clone();
        if self.is_point() {
            return vec![Piece::new(s.clone(), s, true, true)];
        }
        if self.is_punctured_circle() {
            return vec![
                Piece::new(s.clone(), Rational::one(), false, false),
                Piece::new(Rational::zero(), s, true, false),
            ];
        }
        if s < e {
            vec![Piece::new(s, e, self.closed_left, self.closed_right)]
        } else {
            vec![
                Piece::new(s, Rational::one(), self.closed_left, false),
                Piece::new(Rational::zero(), e, true, self.closed_right),
            ]
        }
    }
}

impl fmt::Display for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let open = if self.closed_left { '[' } else { '(' };
        let close = if self.closed_right { ']' } else { ')' };
        if self.is_point() {
            return write!(f, "[{},{}]", self.start, self.end);
        }
        let end = if self.is_punctured_circle() || self.end.value().is_zero() {
            self.end.value() + &Rational::one()
        } else {
            self.end.value().clone()
        };
        write!(f, "{open}{},{end}{close}", self.start)
    }
}

impl fmt::Debug for Arc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Arc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Arc> {
        let s = s.trim();
        let bad = |why: &str| Error::Parse {
            line: None,
            message: format!("bad arc {s:?}: {why}"),
        };
        let mut chars = s.chars();
        let closed_left = match chars.next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad("expected '[' or '('")),
        };
        let closed_right = match chars.next_back() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad("expected ']' or ')'")),
        };
        let (a, b) = chars
            .as_str()
            .split_once(',')
            .ok_or_else(|| bad("expected two endpoints"))?;
        let a: Rational = a.parse()?;
        let b: Rational = b.parse()?;
        if a.is_negative() || a > Rational::one() {
            return Err(bad("start must lie in [0, 1]"));
        }
        if b.is_negative() || b > &a + &Rational::one() {
            return Err(bad("end must lie in [0, start + 1]"));
        }
        Arc::new(a, b, closed_left, closed_right)
    }
}

/// One linear piece of `[0, 1)`. Pieces never contain `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
struct Piece {
    lo: Rational,
    hi: Rational,
    lo_closed: bool,
    hi_closed: bool,
}

impl Piece {
    fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Piece {
        let hi_closed = hi_closed && hi < Rational::one();
        Piece {
            lo,
            hi,
            lo_closed,
            hi_closed,
        }
    }

    fn is_empty(&self) -> bool {
        match self.lo.cmp(&self.hi) {
            Ordering::Less => false,
            Ordering::Equal => !(self.lo_closed && self.hi_closed),
            Ordering::Greater => true,
        }
    }

    fn contains(&self, x: &Rational) -> bool {
        let above = match x.cmp(&self.lo) {
            Ordering::Greater => true,
            Ordering::Equal => self.lo_closed,
            Ordering::Less => false,
        };
        let below = match x.cmp(&self.hi) {
            Ordering::Less => true,
            Ordering::Equal => self.hi_closed,
            Ordering::Greater => false,
        };
        above && below
    }

    fn intersect(&self, other: &Piece) -> Option<Piece> {
        let (lo, lo_closed) = match self.lo.cmp(&other.lo) {
            Ordering::Greater => (&self.lo, self.lo_closed),
            Ordering::Less => (&other.lo, other.lo_closed),
            Ordering::Equal => (&self.lo, self.lo_closed && other.lo_closed),
        };
        let (hi, hi_closed) = match self.hi.cmp(&other.hi) {
            Ordering::Less => (&self.hi, self.hi_closed),
            Ordering::Greater => (&other.hi, other.hi_closed),
            Ordering::Equal => (&self.hi, self.hi_closed && other.hi_closed),
        };
        let p = Piece::new(lo.clone(), hi.clone(), lo_closed, hi_closed);
        (!p.is_empty()).then_some(p)
    }
}

/// A finite union of arcs, in canonical form.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct ArcSet {
    pieces: Vec<Piece>,
}

impl ArcSet {
    pub fn empty() -> ArcSet {
        ArcSet { pieces: Vec::new() }
    }

    pub fn full() -> ArcSet {
        ArcSet {
            pieces: vec![Piece::new(Rational::zero(), Rational::one(), true, false)],
        }
    }

    pub fn from_arc(arc: &Arc) -> ArcSet {
        ArcSet::from_pieces(arc.pieces())
    }

    pub fn from_arcs<'a>(arcs: impl IntoIterator<Item = &'a Arc>) -> ArcSet {
        ArcSet::from_pieces(arcs.into_iter().flat_map(Arc::pieces).collect())
    }

    pub fn from_points<'a>(points: impl IntoIterator<Item = &'a CirclePoint>) -> ArcSet {
        ArcSet::from_pieces(
            points
                .into_iter()
                .map(|p| Piece::new(p.value().clone(), p.value().clone(), true, true))
                .collect(),
        )
    }

    fn from_pieces(mut pieces: Vec<Piece>) -> ArcSet {
        pieces.retain(|p| !p.is_empty());
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then(b.lo_closed.cmp(&a.lo_closed)));
        let mut merged: Vec<Piece> = Vec::with_capacity(pieces.len());
        for p in pieces {
            if let Some(last) = merged.last_mut() {
                let touches = p.lo < last.hi
                    || (p.lo == last.hi && (last.hi_closed || p.lo_closed));
                if touches {
                    match p.hi.cmp(&last.hi) {
                        Ordering::Greater => {
                            last.hi = p.hi;
                            last.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => last.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    if p.lo == last.lo {
                        last.lo_closed |= p.lo_closed;
                    }
                    continue;
                }
            }
            merged.push(p);
        }
        ArcSet { pieces: merged }
    }

    /// Builds a set from linear intervals `lo..hi` of `[0, 1]` with endpoint
    /// flags; an included `1` is identified with `0`.
    pub(crate) fn from_linear(parts: Vec<(Rational, Rational, bool, bool)>) -> ArcSet {
        let mut pieces = Vec::with_capacity(parts.len());
        for (lo, hi, lc, hc) in parts {
            let one = Rational::one();
            if hi == one && hc {
                pieces.push(Piece::new(Rational::zero(), Rational::zero(), true, true));
            }
            if lo == one {
                if lc {
                    pieces.push(Piece::new(Rational::zero(), Rational::zero(), true, true));
                }
                continue;
            }
            pieces.push(Piece::new(lo, hi, lc, hc));
        }
        ArcSet::from_pieces(pieces)
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pieces.len() == 1
            && self.pieces[0].lo.is_zero()
            && self.pieces[0].lo_closed
            && self.pieces[0].hi == Rational::one()
    }

    pub fn contains(&self, p: &CirclePoint) -> bool {
        let x = p.value();
        // pieces are sorted and disjoint: only the last piece starting at or before x can hold it
        let idx = self.pieces.partition_point(|piece| piece.lo <= *x);
        idx > 0 && self.pieces[idx - 1].contains(x)
    }

    pub fn union(&self, other: &ArcSet) -> ArcSet {
        let mut pieces = self.pieces.clone();
        pieces.extend(other.pieces.iter().cloned());
        ArcSet::from_pieces(pieces)
    }

    pub fn intersection(&self, other: &ArcSet) -> ArcSet {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.pieces.len() && j < other.pieces.len() {
            let (a, b) = (&self.pieces[i], &other.pieces[j]);
            if let Some(p) = a.intersect(b) {
                out.push(p);
            }
            // advance whichever piece ends first
            let a_first = match a.hi.cmp(&b.hi) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => !a.hi_closed || b.hi_closed,
            };
            if a_first {
                i += 1;
            } else {
                j += 1;
            }
        }
        ArcSet::from_pieces(out)
    }

    pub fn complement(&self) -> ArcSet {
        let mut out = Vec::new();
        let mut cursor = Rational::zero();
        let mut cursor_closed = true;
        for p in &self.pieces {
            out.push(Piece::new(cursor, p.lo.clone(), cursor_closed, !p.lo_closed));
            cursor = p.hi.clone();
            cursor_closed = !p.hi_closed;
        }
        out.push(Piece::new(cursor, Rational::one(), cursor_closed, false));
        ArcSet::from_pieces(out)
    }

    pub fn difference(&self, other: &ArcSet) -> ArcSet {
        self.intersection(&other.complement())
    }

    pub fn is_subset(&self, other: &ArcSet) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &ArcSet) -> bool {
        self.intersection(other).is_empty()
    }

    /// Canonical arc decomposition; empty for the empty set, and a single
    /// arc list is never produced for the full circle (check [`is_full`]).
    ///
    /// [`is_full`]: ArcSet::is_full
    pub fn arcs(&self) -> Vec<Arc> {
        if self.is_full() || self.pieces.is_empty() {
            return Vec::new();
        }
        let n = self.pieces.len();
        let first = &self.pieces[0];
        let last = &self.pieces[n - 1];
        let wraps = n > 1 && first.lo.is_zero() && first.lo_closed && last.hi == Rational::one();
        let to_arc = |p: &Piece| Arc {
            start: CirclePoint::new(p.lo.clone()),
            end: CirclePoint::new(p.hi.clone()),
            closed_left: p.lo_closed,
            closed_right: p.hi_closed,
        };
        let mut arcs: Vec<Arc> = Vec::with_capacity(n);
        let inner = if wraps { &self.pieces[1..n - 1] } else { &self.pieces[..] };
        arcs.extend(inner.iter().map(to_arc));
        if wraps {
            arcs.push(Arc {
                start: CirclePoint::new(last.lo.clone()),
                end: CirclePoint::new(first.hi.clone()),
                closed_left: last.lo_closed,
                closed_right: first.hi_closed,
            });
        }
        arcs
    }

    /// Connected components: the arcs, or the full circle as one component.
    pub fn component_count(&self) -> usize {
        if self.is_full() {
            1
        } else {
            self.arcs().len()
        }
    }

    /// The least point in canonical circle order (starting at `0`), if the
    /// infimum is attained.
    pub fn min_point(&self) -> Option<CirclePoint> {
        let p = self.pieces.first()?;
        p.lo_closed.then(|| CirclePoint::new(p.lo.clone()))
    }

    /// Endpoints of all arcs; empty for the full circle.
    pub fn boundary_points(&self) -> Vec<CirclePoint> {
        let mut pts: Vec<CirclePoint> = self
            .arcs()
            .iter()
            .flat_map(|a| [a.start().clone(), a.end().clone()])
            .collect();
        pts.sort();
        pts.dedup();
        pts
    }

    /// Image under an orientation-preserving homeomorphism given pointwise.
    pub fn image(&self, map: impl Fn(&CirclePoint) -> CirclePoint) -> ArcSet {
        if self.is_full() {
            return ArcSet::full();
        }
        let arcs: Vec<Arc> = self.arcs().iter().map(|a| a.image(&map)).collect();
        ArcSet::from_arcs(&arcs)
    }

    /// Binary set algebra by name, as exposed on the command line.
    pub fn apply(&self, other: &ArcSet, op: SetOp) -> ArcSet {
        match op {
            SetOp::Union => self.union(other),
            SetOp::Intersect => self.intersection(other),
            SetOp::ComplementOfFirst => self.complement(),
        }
    }
}

/// Binary operations of the arc-set algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetOp {
    Union,
    Intersect,
    ComplementOfFirst,
}

impl fmt::Display for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full() {
            return write!(f, "S1");
        }
        if self.is_empty() {
            return write!(f, "empty");
        }
        let parts: Vec<String> = self.arcs().iter().map(Arc::to_string).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for ArcSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

impl FromStr for ArcSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<ArcSet> {
        let s = s.trim();
        match s {
            "S1" => return Ok(ArcSet::full()),
            "" | "empty" => return Ok(ArcSet::empty()),
            _ => {}
        }
        let mut arcs = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let close = rest.find([']', ')']).ok_or_else(|| Error::Parse {
                line: None,
                message: format!("unterminated arc in {s:?}"),
            })?;
            arcs.push(rest[..=close].parse::<Arc>()?);
            rest = rest[close + 1..].trim_start();
            if let Some(r) = rest.strip_prefix(',') {
                rest = r.trim_start();
            } else if !rest.is_empty() {
                return Err(Error::Parse {
                    line: None,
                    message: format!("expected ',' between arcs in {s:?}"),
                });
            }
        }
        Ok(ArcSet::from_arcs(&arcs))
    }
}
