//! Wreath decompositions of groups with a finite rotation quotient, and the
//! reverse construction.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::ToPrimitive;

use super::{ball, rot_hom_check, GroupGens, HomCheck, RotationCache};
use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, CirclePoint, Rational};
use crate::maps::{PLCircleMap, PLIntervalMap, Word};
use crate::rotation::rotation_number;

/// Largest quotient order handled exactly.
const MAX_QUOTIENT: u64 = 1 << 12;

/// A representative of one rotation number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionElement {
    pub rotation: Rational,
    pub word: Word,
    pub map: PLCircleMap,
}

/// `G ≅ H₀ ≀ Q` at the level of explicit data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WreathData {
    pub base_point: CirclePoint,
    /// `s` and its images under the section, sorted.
    pub orbit: Vec<CirclePoint>,
    pub fundamental_domain: Vec<Arc>,
    /// Generators of `H₀`, renormalized from the domain arc to `[0, 1]`.
    pub h0_generators: Vec<PLIntervalMap>,
    /// The rotation numbers `k/d`, sorted.
    pub quotient: Vec<Rational>,
    /// One element per quotient value, in the same order.
    pub section: Vec<SectionElement>,
}

impl WreathData {
    /// The section as a generator table with names `t0, t1, ...`.
    pub fn quotient_section(&self) -> GroupGens {
        self.section
            .iter()
            .enumerate()
            .map(|(k, e)| (format!("t{k}"), e.map.clone()))
            .collect()
    }

    fn domain(&self) -> &Arc {
        &self.fundamental_domain[0]
    }

    /// Base generators on the domain, their conjugates by the section, and
    /// the nontrivial section elements.
    pub fn reassemble(&self) -> GroupGens {
        let mut out = GroupGens::new();
        for (i, h) in self.h0_generators.iter().enumerate() {
            let on_d = h.squeeze_into(self.domain());
            for (k, t) in self.section.iter().enumerate() {
                let name = if k == 0 { format!("h{}", i + 1) } else { format!("h{}_{k}", i + 1) };
                out.insert(name, on_d.conjugate_by(&t.map));
            }
        }
        for (k, t) in self.section.iter().enumerate().skip(1) {
            out.insert(format!("t{k}"), t.map.clone());
        }
        out
    }

    /// Exact structural checks: domain translates pairwise disjoint, base
    /// generators supported in the domain, section rotation numbers exact
    /// and matching the quotient.
    pub fn verify(&self) -> bool {
        let Some(d) = self.fundamental_domain.first() else {
            return false;
        };
        let d = ArcSet::from_arc(d);
        let translates: Vec<ArcSet> = self.section.iter().map(|t| t.map.image(&d)).collect();
        let disjoint = translates
            .iter()
            .enumerate()
            .all(|(i, a)| translates[i + 1..].iter().all(|b| a.is_disjoint(b)));
        let supported = self
            .h0_generators
            .iter()
            .all(|h| h.squeeze_into(self.domain()).support().is_subset(&d));
        let exact = self.section.iter().zip(&self.quotient).all(|(t, r)| {
            t.rotation == *r
                && rotation_number(&t.map, self.quotient.len() as u64)
                    .map(|x| x.exact_value() == Some(r))
                    .unwrap_or(false)
        });
        disjoint && supported && exact && self.section.len() == self.quotient.len()
    }
}

impl fmt::Display for WreathData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: Vec<String>| v.join(" ");
        writeln!(f, "base point {}", self.base_point)?;
        writeln!(f, "orbit {}", join(self.orbit.iter().map(|p| p.to_string()).collect()))?;
        writeln!(f, "domain {}", join(self.fundamental_domain.iter().map(|a| a.to_string()).collect()))?;
        writeln!(f, "quotient {}", join(self.quotient.iter().map(|r| r.to_pq_string()).collect()))?;
        for (k, t) in self.section.iter().enumerate() {
            writeln!(f, "t{k} = {}", t.word)?;
        }
        write!(f, "h0 generators {}", self.h0_generators.len())
    }
}

/// Decomposes a group whose rotation numbers are exact and additive on the
/// ball of radius `word_length`.
///
/// The section is a spanning tree of the quotient's Cayley graph; the
/// Schreier generators `t_{r+ρ(s)}⁻¹ s t_r` are added to the rot-0 ball
/// elements so that the `G₀` candidates generate `G₀`.
pub fn structure_decomposition(gens: &GroupGens, q_max: u64, word_length: u32) -> Result<WreathData> {
    if let HomCheck::Counterexample(u, v) = rot_hom_check(gens, word_length, q_max)? {
        return Err(Error::FreeSubgroupEvidence(format!(
            "rot({u} · {v}) ≠ rot({u}) + rot({v})"
        )));
    }
    let mut cache = RotationCache::new(q_max);
    let mut rots = BTreeMap::new();
    let mut d = 1u64;
    for (name, g) in gens {
        let r = cache.exact(g, name)?;
        let den = r.denom().to_u64().unwrap_or(u64::MAX);
        d = d.lcm(&den);
        if d > MAX_QUOTIENT {
            return Err(Error::OutOfRange(format!("quotient order exceeds {MAX_QUOTIENT}")));
        }
        rots.insert(name.clone(), r);
    }
    let index = |r: &Rational| -> usize {
        (r.fract() * Rational::from_integer(d as i64)).floor_i64() as usize
    };

    // spanning tree of Z/d in the generators
    let mut section: Vec<Option<(Word, PLCircleMap)>> = vec![None; d as usize];
    section[0] = Some((Word::empty(), PLCircleMap::identity()));
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let k = queue[head];
        head += 1;
        for (name, g) in gens {
            for e in [1i64, -1] {
                let r = Rational::new(k as i64, d as i64) + &rots[name] * &Rational::from_integer(e);
                let j = index(&r);
                if section[j].is_none() {
                    let (w, m) = section[k].clone().expect("visited");
                    let step = if e > 0 { g.clone() } else { g.inverse() };
                    section[j] = Some((Word::power_of(name, e).concat(&w), step.compose(&m)));
                    queue.push(j);
                }
            }
        }
    }
    if queue.len() as u64 != d {
        return Err(Error::Precondition("rotation numbers do not generate their lcm".into()));
    }
    let section: Vec<SectionElement> = section
        .into_iter()
        .enumerate()
        .map(|(k, e)| {
            let (word, map) = e.expect("all visited");
            SectionElement { rotation: Rational::new(k as i64, d as i64), word, map }
        })
        .collect();

    let mut g0: Vec<PLCircleMap> = Vec::new();
    for t in &section {
        for (name, g) in gens {
            let j = index(&(&t.rotation + &rots[name]));
            let s = section[j].map.inverse().compose(g).compose(&t.map);
            if !s.is_identity() {
                g0.push(s);
            }
        }
    }
    for (w, m) in ball(gens, word_length) {
        if !m.is_identity() && cache.exact(&m, &w)?.is_zero() {
            g0.push(m);
        }
    }

    let mut common = ArcSet::full();
    for m in &g0 {
        common = common.intersection(&m.fixed_set());
    }
    let Some(base_point) = common.min_point() else {
        return Err(Error::FreeSubgroupEvidence(if common.is_empty() {
            "rotation-zero elements have no common fixed point".into()
        } else {
            "common fixed set has no least point".into()
        }));
    };
    let mut orbit: Vec<CirclePoint> = section.iter().map(|t| t.map.apply(&base_point)).collect();
    orbit.sort();
    orbit.dedup();
    // orbit points are cyclically ordered; the arc from s to the next one is
    // the complement arc with least start in its orbit
    let domain = if orbit.len() == 1 {
        Arc::punctured(base_point.clone())
    } else {
        Arc::open(base_point.value().clone(), orbit[1].value().clone())?
    };

    let mut h0: Vec<PLIntervalMap> = Vec::new();
    let mut reached: HashSet<PLIntervalMap> = HashSet::new();
    for m in &g0 {
        for t in &section {
            let r = m.conjugate_by(&t.map.inverse()).restrict_to_arc(&domain)?;
            if r.is_identity() || reached.contains(&r) {
                continue;
            }
            h0.push(r);
            let table: BTreeMap<String, PLIntervalMap> =
                h0.iter().enumerate().map(|(i, h)| (i.to_string(), h.clone())).collect();
            reached = ball(&table, 2).into_iter().map(|(_, m)| m).collect();
        }
    }

    Ok(WreathData {
        base_point,
        orbit,
        fundamental_domain: vec![domain],
        h0_generators: h0,
        quotient: section.iter().map(|t| t.rotation.clone()).collect(),
        section,
    })
}

/// `{top = ρ_{1/q}}` together with each base generator squeezed into
/// `(0, 1/q)`, named `h1, h2, ...`.
pub fn wreath_embed_finite(h0_gens: &[PLIntervalMap], q: u64) -> Result<GroupGens> {
    if q == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    let step = Rational::new(1, q as i64);
    let arc = if q == 1 {
        Arc::punctured(CirclePoint::zero())
    } else {
        Arc::open(Rational::zero(), step.clone())?
    };
    let mut out = GroupGens::new();
    out.insert("top".to_string(), PLCircleMap::rotation(&step));
    for (i, h) in h0_gens.iter().enumerate() {
        out.insert(format!("h{}", i + 1), h.squeeze_into(&arc));
    }
    Ok(out)
}

/// Structural check of [`wreath_embed_finite`] output: the `top`-conjugates
/// of base generators have pairwise disjoint supports and commute, and
/// `top` has rotation number exactly `1/q`.
pub fn verify_wreath_structure(gens: &GroupGens, q: u64) -> Result<bool> {
    let top = gens
        .get("top")
        .ok_or_else(|| Error::UnboundGenerator("top".into()))?;
    let expected = Rational::new(1, q as i64).fract();
    if rotation_number(top, q)?.exact_value() != Some(&expected) {
        return Ok(false);
    }
    let base: Vec<&PLCircleMap> = gens.iter().filter(|(n, _)| *n != "top").map(|(_, g)| g).collect();
    for h in &base {
        for k in 1..q as i64 {
            let moved = h.conjugate_by(&top.power(k));
            if !moved.support().is_disjoint(&h.support()) {
                return Ok(false);
            }
            for h2 in &base {
                let c = h2.compose(&moved).compose(&h2.inverse()).compose(&moved.inverse());
                if !c.is_identity() {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
