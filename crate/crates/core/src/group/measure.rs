//! Invariant probability measures.

use std::fmt;

use super::{ball, rot_hom_check, structure_decomposition, GroupGens, HomCheck, RotationCache};
use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, CirclePoint, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvariantMeasure {
    /// Equal weights on finitely many points.
    Atomic(Vec<CirclePoint>),
    /// Samples `(point, φ̄(point))` of a distribution function seen from a
    /// base point, computed on the ball of the given radius.
    StieltjesTable {
        word_length: u32,
        base_point: CirclePoint,
        samples: Vec<(CirclePoint, Rational)>,
    },
}

impl InvariantMeasure {
    /// Lower approximation of the distribution function at `a`; `0` at the
    /// base point.
    pub fn phi_bar(&self, a: &CirclePoint) -> Rational {
        match self {
            InvariantMeasure::Atomic(points) => {
                let s = &points[0];
                let below = points.iter().filter(|p| s.distance_to(p) <= s.distance_to(a)).count();
                Rational::new(below as i64, points.len() as i64)
            }
            InvariantMeasure::StieltjesTable { base_point, samples, .. } => {
                let pos = base_point.distance_to(a);
                samples
                    .iter()
                    .take_while(|(p, _)| base_point.distance_to(p) <= pos)
                    .last()
                    .map(|(_, v)| v.clone())
                    .unwrap_or_else(Rational::zero)
            }
        }
    }
}

impl fmt::Display for InvariantMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantMeasure::Atomic(points) => {
                write!(f, "atomic, weight 1/{} at", points.len())?;
                for p in points {
                    write!(f, " {p}")?;
                }
                Ok(())
            }
            InvariantMeasure::StieltjesTable { word_length, samples, .. } => {
                write!(f, "stieltjes table, word length {word_length}")?;
                for (p, v) in samples {
                    write!(f, "\n{p} {}", v.to_pq_string())?;
                }
                Ok(())
            }
        }
    }
}

/// Atomic measure on the orbit of the base point of the wreath
/// decomposition, checked to be invariant under every generator.
pub fn invariant_measure(gens: &GroupGens, q_max: u64, word_length: u32) -> Result<InvariantMeasure> {
    let data = structure_decomposition(gens, q_max, word_length)?;
    let atoms = ArcSet::from_points(&data.orbit);
    for (name, g) in gens {
        if g.image(&atoms) != atoms {
            return Err(Error::Precondition(format!("orbit is not invariant under {name}")));
        }
    }
    Ok(InvariantMeasure::Atomic(data.orbit))
}

/// `φ̄(a) ≈ sup { rot(g) : g(s) ≤ a }` over the ball of radius
/// `word_length`, with `s` the least common fixed point of its rot-0
/// elements and points ordered starting from `s`.
pub fn stieltjes_table(gens: &GroupGens, word_length: u32, q_max: u64) -> Result<InvariantMeasure> {
    if let HomCheck::Counterexample(u, v) = rot_hom_check(gens, word_length, q_max)? {
        return Err(Error::FreeSubgroupEvidence(format!(
            "rot({u} · {v}) ≠ rot({u}) + rot({v})"
        )));
    }
    let mut cache = RotationCache::new(q_max);
    let elements = ball(gens, word_length);
    let mut common = ArcSet::full();
    let mut rots = Vec::with_capacity(elements.len());
    for (w, m) in &elements {
        let r = cache.exact(m, w)?;
        if r.is_zero() {
            common = common.intersection(&m.fixed_set());
        }
        rots.push(r);
    }
    let s = common
        .min_point()
        .ok_or_else(|| Error::FreeSubgroupEvidence("rotation-zero elements have no common fixed point".into()))?;
    let mut pairs: Vec<(CirclePoint, Rational)> =
        elements.iter().zip(rots).map(|((_, m), r)| (m.apply(&s), r)).collect();
    pairs.sort_by(|(p, r), (p2, r2)| s.distance_to(p).cmp(&s.distance_to(p2)).then(r.cmp(r2)));
    let mut samples: Vec<(CirclePoint, Rational)> = Vec::new();
    let mut best = Rational::zero();
    for (p, r) in pairs {
        best = best.max(r);
        match samples.last_mut() {
            Some((last, v)) if *last == p => *v = best.clone(),
            _ => samples.push((p, best.clone())),
        }
    }
    Ok(InvariantMeasure::StieltjesTable { word_length, base_point: s, samples })
}

/// Weight of an arc: atom counting, or `φ̄(b) - φ̄(a)` read cyclically for
/// a table.
pub fn measure_arc(m: &InvariantMeasure, arc: &Arc) -> Rational {
    match m {
        InvariantMeasure::Atomic(points) => {
            let inside = points.iter().filter(|p| arc.contains(p)).count();
            Rational::new(inside as i64, points.len() as i64)
        }
        InvariantMeasure::StieltjesTable { .. } => {
            if arc.is_point() {
                return Rational::zero();
            }
            if arc.is_punctured_circle() {
                return Rational::one();
            }
            let (a, b) = (m.phi_bar(arc.start()), m.phi_bar(arc.end()));
            if b >= a {
                b - a
            } else {
                Rational::one() - a + b
            }
        }
    }
}

/// Sum of [`measure_arc`] over the components of a set; `1` for the circle.
pub fn measure_set(m: &InvariantMeasure, set: &ArcSet) -> Rational {
    if set.is_full() {
        return Rational::one();
    }
    set.arcs().iter().fold(Rational::zero(), |acc, a| acc + measure_arc(m, a))
}
