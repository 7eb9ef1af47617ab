//! Word searches on the interval: covering a support component by one
//! orbital, and throwing trimmed components off themselves.

use std::collections::BTreeMap;

use super::SearchBudget;
use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet, Rational};
use crate::maps::{PLIntervalMap, Word};

type Named = (String, PLIntervalMap);

fn common_fixed_in(gens: &[Named], a: &Rational, b: &Rational) -> Result<ArcSet> {
    let inside = Arc::open(a.clone(), b.clone())?;
    let mut fix = ArcSet::from_arc(&inside);
    for (_, g) in gens {
        fix = fix.intersection(&g.fixed_set());
    }
    Ok(fix)
}

fn check_interval(a: &Rational, b: &Rational, eps: &Rational) -> Result<()> {
    if a.is_negative() || *b > Rational::one() || a >= b {
        return Err(Error::Precondition(format!("({a},{b}) is not a subinterval of [0,1]")));
    }
    if !eps.is_positive() || (eps + eps) >= (b - a) {
        return Err(Error::Precondition(format!(
            "ε = {eps} leaves the trimmed interval [{},{}] empty",
            a + eps,
            b - eps
        )));
    }
    Ok(())
}

/// Breadth-first search, in shortlex order over the letters `g, g⁻¹` of
/// each generator in turn, for a word with one orbital containing
/// `[a + ε, b - ε]`.
pub fn orbital_cover_search(
    gens: &[Named],
    a: &Rational,
    b: &Rational,
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<Option<Word>> {
    budget.validate()?;
    check_interval(a, b, eps)?;
    let fixed = common_fixed_in(gens, a, b)?;
    if !fixed.is_empty() {
        return Err(Error::Precondition(format!(
            "the generators have common fixed points {fixed} inside ({a},{b})"
        )));
    }
    let (lo, hi) = (a + eps, b - eps);
    let covers = |m: &PLIntervalMap| m.orbitals().iter().any(|(c, d)| *c < lo && *d > hi);
    let letters: Vec<(usize, i64, PLIntervalMap)> = gens
        .iter()
        .enumerate()
        .flat_map(|(i, (_, g))| [(i, 1, g.clone()), (i, -1, g.inverse())])
        .collect();
    // (word, last letter index into `letters`, map)
    let mut frontier: Vec<(Word, Option<usize>, PLIntervalMap)> =
        vec![(Word::empty(), None, PLIntervalMap::identity())];
    for _ in 0..budget.max_word_length {
        let mut next = Vec::new();
        for (w, last, m) in &frontier {
            for (li, (gi, e, g)) in letters.iter().enumerate() {
                if let Some(l) = last {
                    let (lg, le, _) = &letters[*l];
                    if lg == gi && *le == -e {
                        continue;
                    }
                }
                let mut w2 = w.clone();
                w2.push(&gens[*gi].0, *e);
                let m2 = m.compose(g);
                if covers(&m2) {
                    return Ok(Some(w2));
                }
                next.push((w2, Some(li), m2));
            }
        }
        frontier = next;
    }
    Ok(None)
}

/// A word with its map and inverse, for pointwise iteration.
struct Candidate {
    word: Word,
    map: PLIntervalMap,
    inv: PLIntervalMap,
}

impl Candidate {
    fn new(word: Word, map: PLIntervalMap) -> Self {
        let inv = map.inverse();
        Candidate { word, map, inv }
    }

    fn inverted(&self) -> Self {
        Candidate {
            word: self.word.inverse(),
            map: self.inv.clone(),
            inv: self.map.clone(),
        }
    }

    fn iterate(&self, e: i64, mut x: Rational) -> Rational {
        let m = if e < 0 { &self.inv } else { &self.map };
        for _ in 0..e.unsigned_abs() {
            x = m.eval(&x);
        }
        x
    }
}

/// Does `w` move every trimmed interval `[c, d]` entirely off itself?
fn displaces(w: impl Fn(&Rational) -> Rational, trimmed: &[(Rational, Rational)]) -> bool {
    trimmed.iter().all(|(c, d)| w(d) < *c || w(c) > *d)
}

/// Searches for a word `w` with `w([a_i + ε, b_i - ε]) ∩ [a_i + ε, b_i - ε] = ∅`
/// for every component: first pure powers of orbital-cover words and
/// generators, then products `f^m g^n f^-m f^-K` ordered by `m + n + K`.
pub fn throw_off_search(
    gens: &[Named],
    components: &[(Rational, Rational)],
    eps: &Rational,
    budget: &SearchBudget,
) -> Result<Option<(Word, PLIntervalMap)>> {
    budget.validate()?;
    if components.is_empty() {
        return Err(Error::Precondition("no components given".into()));
    }
    for (a, b) in components {
        check_interval(a, b, eps)?;
        for (name, g) in gens {
            if g.eval(a) != *a || g.eval(b) != *b {
                return Err(Error::Precondition(format!("{name} does not fix the ends of ({a},{b})")));
            }
        }
    }
    let table: BTreeMap<String, PLIntervalMap> = gens.iter().cloned().collect();
    let trimmed: Vec<(Rational, Rational)> = components.iter().map(|(a, b)| (a + eps, b - eps)).collect();

    let mut cands: Vec<Candidate> = Vec::new();
    let push = |cands: &mut Vec<Candidate>, w: Word| {
        if !w.is_empty() && !cands.iter().any(|c| c.word == w) {
            let m = w.evaluate(&table).expect("words use the given generators");
            cands.push(Candidate::new(w, m));
        }
    };
    for (a, b) in components {
        if let Some(w) = orbital_cover_search(gens, a, b, eps, budget)? {
            push(&mut cands, w);
        }
    }
    for (name, _) in gens {
        push(&mut cands, Word::letter(name));
    }
    let found = |w: Word| {
        let m = w.evaluate(&table).expect("words use the given generators");
        Ok(Some((w, m)))
    };

    for m in 1..=i64::from(budget.max_m) {
        for c in &cands {
            for e in [m, -m] {
                if displaces(|x| c.iterate(e, x.clone()), &trimmed) {
                    return found(c.word.pow(e));
                }
            }
        }
    }

    let signed: Vec<Candidate> = cands.iter().flat_map(|c| [c.inverted(), Candidate::new(c.word.clone(), c.map.clone())]).collect();
    let (max_m, max_n, max_k) = (i64::from(budget.max_m), i64::from(budget.max_n), i64::from(budget.max_k));
    for total in 2..=(max_m + max_n + max_k) {
        for m in 1..=max_m.min(total - 1) {
            for n in 1..=max_n.min(total - m) {
                let k = total - m - n;
                if k > max_k {
                    continue;
                }
                for (i, f) in signed.iter().enumerate() {
                    for (j, g) in signed.iter().enumerate() {
                        if i / 2 == j / 2 {
                            continue;
                        }
                        let w = |x: &Rational| {
                            let x = f.iterate(-k, x.clone());
                            let x = f.iterate(-m, x);
                            let x = g.iterate(n, x);
                            f.iterate(m, x)
                        };
                        if displaces(w, &trimmed) {
                            let word = f.word.pow(m).concat(&g.word.pow(n)).concat(&f.word.pow(-m)).concat(&f.word.pow(-k));
                            return found(word);
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Independent check of a throw-off witness by arc-set algebra: the image
/// of each trimmed interval is disjoint from it.
pub fn displaces_all(map: &PLIntervalMap, components: &[(Rational, Rational)], eps: &Rational) -> bool {
    components.iter().all(|(a, b)| {
        let Ok(arc) = Arc::closed(a + eps, b - eps) else {
            return false;
        };
        let set = ArcSet::from_arc(&arc);
        map.as_circle().image(&set).is_disjoint(&set)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    /// One-bump map on `(a, b)`, pushing right.
    fn bump_on(a: Rational, b: Rational) -> PLIntervalMap {
        let mid = a.midpoint(&b);
        let up = mid.midpoint(&b);
        let mut pts = Vec::new();
        if !a.is_zero() {
            pts.push((q(0, 1), q(0, 1)));
        }
        pts.push((a.clone(), a));
        pts.push((mid, up));
        pts.push((b.clone(), b.clone()));
        if b != q(1, 1) {
            pts.push((q(1, 1), q(1, 1)));
        }
        PLIntervalMap::from_breakpoints(pts).unwrap()
    }

    fn named(list: &[(&str, PLIntervalMap)]) -> Vec<Named> {
        list.iter().map(|(n, m)| (n.to_string(), m.clone())).collect()
    }

    #[test]
    fn single_bump_covers_itself() {
        let gens = named(&[("f", bump_on(q(0, 1), q(1, 1)))]);
        let w = orbital_cover_search(&gens, &q(0, 1), &q(1, 1), &q(1, 8), &SearchBudget::default()).unwrap();
        assert_eq!(w.unwrap().to_string(), "f");
    }

    #[test]
    fn overlapping_bumps_need_a_product() {
        let gens = named(&[("f", bump_on(q(0, 1), q(2, 3))), ("g", bump_on(q(1, 3), q(1, 1)))]);
        let w = orbital_cover_search(&gens, &q(0, 1), &q(1, 1), &q(1, 10), &SearchBudget::default())
            .unwrap()
            .unwrap();
        assert_eq!(w.length(), 2);
        let table: BTreeMap<_, _> = gens.into_iter().collect();
        let m = w.evaluate(&table).unwrap();
        assert!(m.orbitals().iter().any(|(c, d)| *c < q(1, 10) && *d > q(9, 10)));
    }

    #[test]
    fn common_fixed_points_are_rejected() {
        let gens = named(&[("f", bump_on(q(0, 1), q(1, 3)))]);
        assert!(orbital_cover_search(&gens, &q(0, 1), &q(1, 1), &q(1, 10), &SearchBudget::default()).is_err());
    }

    #[test]
    fn throw_off_single_orbital() {
        let f = bump_on(q(0, 1), q(1, 1));
        let gens = named(&[("f", f.clone())]);
        let comps = [(q(0, 1), q(1, 1))];
        let (w, m) = throw_off_search(&gens, &comps, &q(1, 8), &SearchBudget::default()).unwrap().unwrap();
        let mut k = 1;
        let mut x = f.eval(&q(1, 8));
        while x <= q(7, 8) {
            x = f.eval(&x);
            k += 1;
        }
        assert_eq!(w, Word::power_of("f", k));
        assert!(displaces_all(&m, &comps, &q(1, 8)));
    }

    #[test]
    fn throw_off_two_orbitals() {
        let gens = named(&[("f", bump_on(q(0, 1), q(1, 2))), ("g", bump_on(q(1, 2), q(1, 1)).inverse())]);
        let comps = [(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))];
        let eps = q(1, 16);
        let (w, m) = throw_off_search(&gens, &comps, &eps, &SearchBudget::default()).unwrap().unwrap();
        assert!(displaces_all(&m, &comps, &eps), "{w}");
    }

    #[test]
    fn trimmed_interval_must_be_nonempty() {
        let gens = named(&[("f", bump_on(q(0, 1), q(1, 1)))]);
        assert!(throw_off_search(&gens, &[(q(0, 1), q(1, 1))], &q(1, 2), &SearchBudget::default()).is_err());
    }
}
