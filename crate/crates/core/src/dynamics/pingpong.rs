use std::collections::BTreeMap;
use std::fmt;

use super::{orbital_arcs, SearchBudget};
use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, CirclePoint, Rational};
use crate::maps::{LiftMap, PLCircleMap, Word};

/// A finitely checkable proof that `gen1^N` and `gen2^N` generate a free
/// group of rank two.
///
/// With `f`, `g` the maps of the two words:
/// `f(X1+) ⊆ X1+`, `f⁻¹(X1-) ⊆ X1-`, `f^N(X2) ⊆ X1+`, `f^-N(X2) ⊆ X1-`,
/// the same four with the roles swapped, and `X1 ∩ X2 = ∅`, where
/// `Xi = Xi+ ∪ Xi-`. By induction `f^{kN}(X2) ⊆ X1` and `g^{kN}(X1) ⊆ X2`
/// for every `k ≠ 0`, which is the ping-pong configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PingPongCertificate {
    pub gen1: Word,
    pub gen2: Word,
    pub n: u64,
    pub x1_plus: ArcSet,
    pub x1_minus: ArcSet,
    pub x2_plus: ArcSet,
    pub x2_minus: ArcSet,
}

impl fmt::Display for PingPongCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "gen1 {}", self.gen1)?;
        writeln!(f, "gen2 {}", self.gen2)?;
        writeln!(f, "N {}", self.n)?;
        writeln!(f, "X1+ {}", self.x1_plus)?;
        writeln!(f, "X1- {}", self.x1_minus)?;
        writeln!(f, "X2+ {}", self.x2_plus)?;
        write!(f, "X2- {}", self.x2_minus)
    }
}

/// Orbitals of `f` with the direction of motion: `true` when `f` pushes
/// points toward the end of the arc.
fn directed_orbitals(f: &PLCircleMap) -> Vec<(Arc, bool)> {
    let hat = LiftMap::hat(f);
    orbital_arcs(f)
        .unwrap_or_default()
        .into_iter()
        .map(|arc| {
            let mid = arc.start().value() + &(arc.length() / Rational::from_integer(2));
            let forward = hat.eval(&mid) > mid;
            (arc, forward)
        })
        .collect()
}

/// One-sided closed neighborhoods of the orbital ends: those `f` attracts
/// toward, and those `f⁻¹` attracts toward.
fn end_neighborhoods(orbitals: &[(Arc, bool)], r: &Rational) -> (ArcSet, ArcSet) {
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for (arc, forward) in orbitals {
        let s = arc.start().value();
        let e = arc.end().value();
        let at_start = Arc::closed(s.clone(), s + r).expect("short arc");
        let at_end = Arc::closed(e - r, e.clone()).expect("short arc");
        if *forward {
            plus.push(at_end);
            minus.push(at_start);
        } else {
            plus.push(at_start);
            minus.push(at_end);
        }
    }
    (ArcSet::from_arcs(&plus), ArcSet::from_arcs(&minus))
}

fn min_circle_distance(a: &[CirclePoint], b: &[CirclePoint]) -> Option<Rational> {
    a.iter()
        .flat_map(|p| {
            b.iter().map(move |q| {
                let d = p.distance_to(q);
                let e = q.distance_to(p);
                d.min(e)
            })
        })
        .min()
}

fn absorbs(f: &PLCircleMap, finv: &PLCircleMap, plus: &ArcSet, minus: &ArcSet) -> bool {
    f.image(plus).is_subset(plus) && finv.image(minus).is_subset(minus)
}

fn sends_into(fp: &PLCircleMap, fm: &PLCircleMap, other: &ArcSet, plus: &ArcSet, minus: &ArcSet) -> bool {
    fp.image(other).is_subset(plus) && fm.image(other).is_subset(minus)
}

/// [`ping_pong_search_named`] with the generators called `f` and `g`.
pub fn ping_pong_search(
    f: &PLCircleMap,
    g: &PLCircleMap,
    budget: &SearchBudget,
) -> Result<Option<PingPongCertificate>> {
    ping_pong_search_named(("f", f), ("g", g), budget)
}

/// Builds a ping-pong certificate for two maps whose fixed sets are
/// nonempty and disjoint, trying `N = 1..=max_n`.
pub fn ping_pong_search_named(
    (name_f, f): (&str, &PLCircleMap),
    (name_g, g): (&str, &PLCircleMap),
    budget: &SearchBudget,
) -> Result<Option<PingPongCertificate>> {
    budget.validate()?;
    let (fix_f, fix_g) = (f.fixed_set(), g.fixed_set());
    if fix_f.is_empty() || fix_g.is_empty() {
        return Err(Error::Precondition("both maps need fixed points".into()));
    }
    if !fix_f.is_disjoint(&fix_g) {
        return Err(Error::Precondition(format!(
            "fixed sets are not disjoint: they share {}",
            fix_f.intersection(&fix_g)
        )));
    }
    let (orb_f, orb_g) = (directed_orbitals(f), directed_orbitals(g));
    let bd_f = fix_f.boundary_points();
    let bd_g = fix_g.boundary_points();
    let mut scale = min_circle_distance(&bd_f, &bd_g).expect("both fixed sets have boundary");
    for (arc, _) in orb_f.iter().chain(&orb_g) {
        scale = scale.min(arc.length());
    }
    let (finv, ginv) = (f.inverse(), g.inverse());
    let mut r = scale / Rational::from_integer(64);
    let two = Rational::from_integer(2);
    for _ in 0..32 {
        let (x1p, x1m) = end_neighborhoods(&orb_f, &r);
        let (x2p, x2m) = end_neighborhoods(&orb_g, &r);
        let x1 = x1p.union(&x1m);
        let x2 = x2p.union(&x2m);
        if !x1.is_disjoint(&x2) || !absorbs(f, &finv, &x1p, &x1m) || !absorbs(g, &ginv, &x2p, &x2m) {
            r = r / &two;
            continue;
        }
        let (mut fp, mut fm, mut gp, mut gm) = (f.clone(), finv.clone(), g.clone(), ginv.clone());
        for n in 1..=u64::from(budget.max_n) {
            if n > 1 {
                fp = f.compose(&fp);
                fm = finv.compose(&fm);
                gp = g.compose(&gp);
                gm = ginv.compose(&gm);
            }
            if sends_into(&fp, &fm, &x2, &x1p, &x1m) && sends_into(&gp, &gm, &x1, &x2p, &x2m) {
                return Ok(Some(PingPongCertificate {
                    gen1: Word::letter(name_f),
                    gen2: Word::letter(name_g),
                    n,
                    x1_plus: x1p,
                    x1_minus: x1m,
                    x2_plus: x2p,
                    x2_minus: x2m,
                }));
            }
        }
        return Ok(None);
    }
    Ok(None)
}

/// Checks all eight inclusions and the disjointness exactly.
pub fn verify_ping_pong(cert: &PingPongCertificate, gens: &BTreeMap<String, PLCircleMap>) -> Result<bool> {
    let f = cert.gen1.evaluate(gens)?;
    let g = cert.gen2.evaluate(gens)?;
    if cert.n == 0 {
        return Ok(false);
    }
    let n = i64::try_from(cert.n).map_err(|_| Error::OutOfRange("exponent too large".into()))?;
    let x1 = cert.x1_plus.union(&cert.x1_minus);
    let x2 = cert.x2_plus.union(&cert.x2_minus);
    let nonempty = !x1.is_empty() && !x2.is_empty();
    let (finv, ginv) = (f.inverse(), g.inverse());
    Ok(nonempty
        && x1.is_disjoint(&x2)
        && absorbs(&f, &finv, &cert.x1_plus, &cert.x1_minus)
        && absorbs(&g, &ginv, &cert.x2_plus, &cert.x2_minus)
        && sends_into(&f.power(n), &f.power(-n), &x2, &cert.x1_plus, &cert.x1_minus)
        && sends_into(&g.power(n), &g.power(-n), &x1, &cert.x2_plus, &cert.x2_minus))
}
