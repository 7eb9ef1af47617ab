//! Group-level analyses over finitely many named generators.

mod measure;
mod structure;

pub use measure::{invariant_measure, measure_arc, measure_set, stieltjes_table, InvariantMeasure};
pub use structure::{
    structure_decomposition, verify_wreath_structure, wreath_embed_finite, SectionElement, WreathData,
};

use std::collections::{BTreeMap, HashMap};
use std::hash::Hash;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::maps::{Homeomorphism, PLCircleMap, Word};
use crate::rotation::{rotation_number, RotationResult};

/// Named generators of a group of circle maps.
pub type GroupGens = BTreeMap<String, PLCircleMap>;

/// `G_0` membership: `f` has a fixed point, equivalently rotation number 0.
pub fn g0_test(f: &PLCircleMap) -> bool {
    !f.fixed_set().is_empty()
}

/// Distinct group elements of word length at most `radius`, each with a
/// shortest word; ordered by length, then in the order words are generated
/// (generators in name order, each letter before its inverse).
pub fn ball<M: Homeomorphism + Eq + Hash>(gens: &BTreeMap<String, M>, radius: u32) -> Vec<(Word, M)> {
    let letters: Vec<(&str, i64, M)> = gens
        .iter()
        .flat_map(|(n, g)| [(n.as_str(), 1, g.clone()), (n.as_str(), -1, g.inverse())])
        .collect();
    let mut seen: HashMap<M, usize> = HashMap::new();
    let mut out = vec![(Word::empty(), M::identity())];
    seen.insert(M::identity(), 0);
    let mut frontier = vec![0usize];
    for _ in 0..radius {
        let mut next = Vec::new();
        for &i in &frontier {
            for (name, e, g) in &letters {
                let (w, m) = &out[i];
                let mut w2 = w.clone();
                w2.push(name, *e);
                if w2.length() <= w.length() {
                    continue;
                }
                let m2 = m.compose(g);
                if seen.contains_key(&m2) {
                    continue;
                }
                seen.insert(m2.clone(), out.len());
                next.push(out.len());
                out.push((w2, m2));
            }
        }
        frontier = next;
    }
    out
}

/// Memoized exact rotation numbers.
pub struct RotationCache {
    q_max: u64,
    table: HashMap<PLCircleMap, RotationResult>,
}

impl RotationCache {
    pub fn new(q_max: u64) -> Self {
        RotationCache {
            q_max,
            table: HashMap::new(),
        }
    }

    pub fn get(&mut self, f: &PLCircleMap) -> Result<RotationResult> {
        if let Some(r) = self.table.get(f) {
            return Ok(r.clone());
        }
        let r = rotation_number(f, self.q_max)?;
        self.table.insert(f.clone(), r.clone());
        Ok(r)
    }

    /// The exact rotation number, or an "inconclusive" error.
    pub fn exact(&mut self, f: &PLCircleMap, what: &dyn std::fmt::Display) -> Result<Rational> {
        match self.get(f)? {
            RotationResult::Exact { value, .. } => Ok(value),
            r => Err(Error::Inconclusive(format!(
                "rotation number of {what} is only known as {r} at q_max = {}",
                self.q_max
            ))),
        }
    }
}

/// Outcome of [`rot_hom_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HomCheck {
    Pass,
    /// `rot(u v) ≠ rot(u) + rot(v)`.
    Counterexample(Word, Word),
}

/// Tests additivity of the rotation number on all pairs `(u, v)` of ball
/// elements with `|u| + |v| ≤ word_length`. A counterexample shows the
/// group contains a non-abelian free subgroup.
pub fn rot_hom_check(gens: &GroupGens, word_length: u32, q_max: u64) -> Result<HomCheck> {
    let elements = ball(gens, word_length);
    let mut cache = RotationCache::new(q_max);
    let rots: Vec<Rational> = elements
        .iter()
        .map(|(w, m)| cache.exact(m, w))
        .collect::<Result<_>>()?;
    for total in 0..=u64::from(word_length) {
        for (i, (u, mu)) in elements.iter().enumerate() {
            let lu = u.length();
            if lu > total {
                break;
            }
            for (j, (v, mv)) in elements.iter().enumerate() {
                if lu + v.length() != total {
                    if lu + v.length() > total {
                        break;
                    }
                    continue;
                }
                let uv = mu.compose(mv);
                let r = cache.exact(&uv, &u.concat(v))?;
                if r != (&rots[i] + &rots[j]).fract() {
                    return Ok(HomCheck::Counterexample(u.clone(), v.clone()));
                }
            }
        }
    }
    Ok(HomCheck::Pass)
}
