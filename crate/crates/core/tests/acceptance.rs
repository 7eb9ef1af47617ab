mod common;

use std::collections::{BTreeMap, HashSet};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{c_bump, half_turn_pair, random_t};
use plcircle::dynamics::{
    common_fixed_set, displaces_all, ping_pong_search, throw_off_search, verify_ping_pong, PingPongCertificate,
    SearchBudget,
};
use plcircle::group::{
    ball, invariant_measure, measure_arc, measure_set, rot_hom_check, stieltjes_table, structure_decomposition,
    wreath_embed_finite, GroupGens, HomCheck, InvariantMeasure,
};
use plcircle::rotation::{rotation_number, rotation_number_with, RotationResult, DEFAULT_ITERATIONS};
use plcircle::thompson::{
    f_generator_x0, f_generator_x1, qz_embed, solodov_arcs, solodov_pair, t_membership, wreath_ft_generators, xn_map,
};
use plcircle::{q, Arc, ArcSet, CirclePoint, LiftMap, PLCircleMap, PLIntervalMap, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_rot(f: &PLCircleMap, q_max: u64) -> Result<Rational, String> {
    match rotation_number(f, q_max).map_err(|e| e.to_string())? {
        RotationResult::Exact { value, .. } => Ok(value),
        r => Err(format!("expected an exact rotation number, got {r}")),
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:.2?}, limit {limit:?}"))
}

fn points(ps: &[(i64, i64)]) -> ArcSet {
    let pts: Vec<CirclePoint> = ps.iter().map(|&(a, b)| CirclePoint::new(q(a, b))).collect();
    ArcSet::from_points(&pts)
}

fn solodov_reproduction() -> Check {
    let start = Instant::now();
    let (a, b) = solodov_pair();
    ensure(t_membership(&a) && t_membership(&b), || "a or b not in T".into())?;
    ensure(a.fixed_set() == points(&[(0, 1), (1, 2)]), || format!("Fix(a) = {}", a.fixed_set()))?;
    ensure(b.fixed_set() == points(&[(1, 4), (3, 4)]), || format!("Fix(b) = {}", b.fixed_set()))?;
    let r = solodov_arcs();
    let a_r1 = a.image_arc(&r[0]);
    ensure(a_r1 == Arc::closed(q(13, 32), q(7, 16)).unwrap(), || format!("a(R1) = {a_r1}"))?;
    for (i, m) in [&a, &b, &a, &b].into_iter().enumerate() {
        let img = ArcSet::from_arc(&m.image_arc(&r[i]));
        ensure(img.is_subset(&r[(i + 1) % 4].interior()), || format!("inclusion {} fails", i + 1))?;
    }
    let baba = b.compose(&a).compose(&b).compose(&a);
    match rotation_number(&baba, 4).map_err(|e| e.to_string())? {
        RotationResult::Exact { value, witness } => {
            ensure(value.is_zero(), || format!("rot(baba) = {value}"))?;
            ensure(witness.s == CirclePoint::new(q(1, 6)), || format!("witness {}", witness.s))?;
        }
        e => return Err(format!("rot(baba) = {e}")),
    }
    ensure(baba.apply(&CirclePoint::new(q(1, 6))) == CirclePoint::new(q(1, 6)), || "baba(1/6) ≠ 1/6".into())?;
    let img = ArcSet::from_arc(&baba.image_arc(&r[0]));
    ensure(img.is_subset(&r[0].interior()), || format!("baba(R1) = {img}"))?;
    within(Duration::from_secs(1), start)?;
    Ok(format!("baba(R1) = {img}, {:.2?}", start.elapsed()))
}

fn xn_tower() -> Check {
    let start = Instant::now();
    let mut fact = 1i64;
    for n in 1..=6u32 {
        fact *= i64::from(n);
        let x = xn_map(n).map_err(|e| e.to_string())?;
        let r = exact_rot(x, 720)?;
        ensure(r == Rational::new(1, fact).fract(), || format!("rot(X{n}) = {r}"))?;
        ensure(t_membership(x), || format!("X{n} not in T"))?;
        if n <= 5 {
            ensure(x.power(fact).is_identity(), || format!("X{n}^{fact} ≠ 1"))?;
        }
    }
    ensure(t_membership(xn_map(7).unwrap()), || "X7 not in T".into())?;
    for n in 2..=5u32 {
        let next = xn_map(n + 1).unwrap().power(i64::from(n) + 1);
        ensure(next == *xn_map(n).unwrap(), || format!("X{}^{} ≠ X{n}", n + 1, n + 1))?;
    }
    within(Duration::from_secs(30), start)?;
    Ok(format!("n = 1..6, {:.2?}", start.elapsed()))
}

fn rotation_laws() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut zero = 0;
    for i in 0..100 {
        let f = random_t(&mut rng);
        let g = random_t(&mut rng);
        let r = exact_rot(&f, 64).map_err(|e| format!("element {i}: {e}"))?;
        let rc = exact_rot(&f.conjugate_by(&g), 64)?;
        ensure(rc == r, || format!("element {i}: rot(f^g) = {rc} ≠ {r}"))?;
        for n in -12i64..=12 {
            let rn = exact_rot(&f.power(n), 64)?;
            let want = (&r * &Rational::from_integer(n)).fract();
            ensure(rn == want, || format!("element {i}: rot(f^{n}) = {rn} ≠ {want}"))?;
        }
        let has_fix = !f.fixed_set().is_empty();
        ensure(r.is_zero() == has_fix, || format!("element {i}: rot {r} but fixed points {has_fix}"))?;
        zero += usize::from(has_fix);
    }
    Ok(format!("100 elements, {zero} with rotation number 0"))
}

fn perturbations(cert: &PingPongCertificate) -> Vec<PingPongCertificate> {
    let x1 = cert.x1_plus.union(&cert.x1_minus);
    let x2 = cert.x2_plus.union(&cert.x2_minus);
    let mut out = Vec::new();
    let sets: [(fn(&mut PingPongCertificate) -> &mut ArcSet, &ArcSet, &ArcSet); 4] = [
        (|c| &mut c.x1_plus, &cert.x1_plus, &x2),
        (|c| &mut c.x1_minus, &cert.x1_minus, &x2),
        (|c| &mut c.x2_plus, &cert.x2_plus, &x1),
        (|c| &mut c.x2_minus, &cert.x2_minus, &x1),
    ];
    for (field, set, other) in sets {
        let target = ArcSet::from_arc(&other.arcs()[0]);
        for arc in set.arcs() {
            let mut c = cert.clone();
            *field(&mut c) = set.union(&ArcSet::from_arc(&arc)).union(&target);
            out.push(c);
        }
    }
    out
}

fn free_subgroup_certificates() -> Check {
    let (a, b) = solodov_pair();
    let gens: BTreeMap<String, PLCircleMap> = [("f".into(), a.clone()), ("g".into(), b.clone())].into();
    let cert = ping_pong_search(&a, &b, &SearchBudget::default())
        .map_err(|e| e.to_string())?
        .ok_or("no certificate within the default budget")?;
    ensure(verify_ping_pong(&cert, &gens).map_err(|e| e.to_string())?, || "certificate rejected".into())?;
    let bad = perturbations(&cert);
    for c in &bad {
        ensure(!verify_ping_pong(c, &gens).unwrap(), || format!("overlapping certificate accepted:\n{c}"))?;
    }
    let common = common_fixed_set(&[a, b]).map_err(|e| e.to_string())?;
    ensure(common.is_empty(), || format!("common fixed set {common}"))?;
    Ok(format!("N = {}, {} perturbations rejected", cert.n, bad.len()))
}

fn homomorphism_alternative() -> Check {
    let rotations: GroupGens = [
        ("a".into(), PLCircleMap::rotation(&q(1, 3))),
        ("b".into(), PLCircleMap::rotation(&q(1, 5))),
    ]
    .into();
    ensure(rot_hom_check(&rotations, 4, 15).map_err(|e| e.to_string())? == HomCheck::Pass, || {
        "rotation group failed".into()
    })?;
    let mut corpus: Vec<(String, GroupGens)> = Vec::new();
    for qn in [1u64, 2, 3, 4] {
        corpus.push((
            format!("F wreath Z/{qn}"),
            wreath_embed_finite(&[f_generator_x0(), f_generator_x1()], qn).unwrap(),
        ));
    }
    corpus.push(("trivial base, q=4".into(), wreath_embed_finite(&[], 4).unwrap()));
    corpus.push(("<c> wreath Z/2".into(), wreath_embed_finite(&[f_generator_x0()], 2).unwrap()));
    for qn in [1u64, 2, 3, 6] {
        corpus.push((format!("FT({qn})"), wreath_ft_generators(qn).unwrap()));
    }
    for (name, gens) in &corpus {
        let r = rot_hom_check(gens, 4, 64).map_err(|e| format!("{name}: {e}"))?;
        ensure(r == HomCheck::Pass, || format!("{name}: {r:?}"))?;
    }
    let (f, g) = half_turn_pair();
    let pair: GroupGens = [("f".into(), f.clone()), ("g".into(), g.clone())].into();
    let HomCheck::Counterexample(u, v) = rot_hom_check(&pair, 2, 8).map_err(|e| e.to_string())? else {
        return Err("half-turn pair passed".into());
    };
    let (mu, mv) = (u.evaluate(&pair).unwrap(), v.evaluate(&pair).unwrap());
    ensure(exact_rot(&mu, 8)?.is_zero() && exact_rot(&mv, 8)?.is_zero(), || "factors not in G0".into())?;
    let ruv = exact_rot(&mu.compose(&mv), 8)?;
    ensure(!ruv.is_zero(), || "product has rotation 0".into())?;
    ensure(exact_rot(&f, 8)?.is_zero() && exact_rot(&g, 8)?.is_zero(), || "f, g not in G0".into())?;
    Ok(format!("{} groups pass; counterexample ({u}, {v}) with rot = {ruv}", corpus.len() + 1))
}

/// Abscissas of `f` mapped back by the lift `v`: the points `x ∈ [0, 1)`
/// with `v(x)` congruent to an abscissa of `f`.
fn pullback(f: &LiftMap, v: &LiftMap) -> Vec<Rational> {
    let v0 = v.eval(&Rational::zero());
    let shift = v0.floor();
    f.base()
        .abscissas()
        .iter()
        .map(|a| {
            let mut y = a + &shift;
            if y < v0 {
                y += &Rational::one();
            }
            v.eval_inverse(&y)
        })
        .collect()
}

/// The first `x ∈ [0, 1]` with `d(x)` an integer, where `d` is linear
/// between consecutive `xs`.
fn integer_crossing(xs: &mut Vec<Rational>, d: impl Fn(&Rational) -> Rational) -> Option<Rational> {
    xs.push(Rational::zero());
    xs.push(Rational::one());
    xs.sort();
    xs.dedup();
    let mut prev: Option<Rational> = None;
    for (i, x) in xs.iter().enumerate() {
        let val = d(x);
        if val.is_integer() {
            return Some(x.clone());
        }
        if let Some(p) = prev {
            let k = Rational::from(p.clone().min(val.clone()).ceil_int());
            if k <= p.clone().max(val.clone()) {
                let t = (&k - &p) / (&val - &p);
                return Some(&xs[i - 1] + &(t * (x - &xs[i - 1])));
            }
        }
        prev = Some(val);
    }
    None
}

/// A point `x` with `u(x) = v(x)`: the preimage of a fixed point of `u∘v⁻¹`.
fn coincidence(u: &LiftMap, v: &LiftMap) -> Option<Rational> {
    let mut xs: Vec<Rational> = u.base().abscissas().iter().chain(v.base().abscissas()).cloned().collect();
    integer_crossing(&mut xs, |x| u.eval(x) - v.eval(x))
}

/// A fixed point of `[u, v] = uv (vu)⁻¹`: `vu(x)` for `x` with `uv(x) = vu(x)`.
fn commutator_fixed_point(u: &LiftMap, v: &LiftMap) -> Option<Rational> {
    let d = |x: &Rational| u.eval(&v.eval(x)) - v.eval(&u.eval(x));
    let x = if d(&Rational::zero()).is_integer() {
        Rational::zero()
    } else {
        let mut xs: Vec<Rational> = u.base().abscissas().iter().chain(v.base().abscissas()).cloned().collect();
        xs.extend(pullback(u, v));
        xs.extend(pullback(v, u));
        integer_crossing(&mut xs, d)?
    };
    Some(v.eval(&u.eval(&x)).fract())
}

fn commutator_fixed_points() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(36);
    let mut report = Vec::new();
    for qn in [2u64, 6] {
        let gens = wreath_ft_generators(qn).unwrap();
        let elements: Vec<PLCircleMap> = ball(&gens, 4).into_iter().map(|(_, m)| m).collect();
        let lifts: Vec<LiftMap> = elements.iter().map(LiftMap::hat).collect();
        let rots: Vec<Rational> = elements.iter().map(|m| exact_rot(m, 64)).collect::<Result<_, _>>()?;
        let (mut equal, mut comms) = (0usize, 0usize);
        for i in 0..elements.len() {
            for j in i..elements.len() {
                if rots[i] == rots[j] {
                    equal += 1;
                    ensure(coincidence(&lifts[i], &lifts[j]).is_some(), || {
                        format!("q={qn}: equal rotation but u v⁻¹ has no fixed point ({i}, {j})")
                    })?;
                }
                let s = commutator_fixed_point(&lifts[i], &lifts[j])
                    .ok_or_else(|| format!("q={qn}: commutator ({i}, {j}) has no fixed point"))?;
                comms += 1;
                let (a, b) = (rng.gen_range(1..=2i64), rng.gen_range(-2..=-1i64));
                for (du, dv) in [(0, 0), (a, 0), (0, b), (a, b)] {
                    let (u, v) = (lifts[i].shifted(du), lifts[j].shifted(dv));
                    for k in [0i64, 1] {
                        let hat_s = &s + &Rational::from_integer(k);
                        let img = u.eval(&v.eval(&u.eval_inverse(&v.eval_inverse(&hat_s))));
                        ensure(img == hat_s, || format!("q={qn}: lifted commutator moves {hat_s}"))?;
                    }
                }
            }
        }
        // cross-check the pointwise tests against composed maps
        for _ in 0..300 {
            let (i, j) = (rng.gen_range(0..elements.len()), rng.gen_range(0..elements.len()));
            let (u, v) = (&elements[i], &elements[j]);
            let comm = u.compose(v).compose(&u.inverse()).compose(&v.inverse());
            let s = commutator_fixed_point(&lifts[i], &lifts[j]).unwrap();
            ensure(comm.fixed_set().contains(&CirclePoint::new(s)), || "commutator fixed point disagrees".into())?;
            let same = !u.compose(&v.inverse()).fixed_set().is_empty();
            ensure(same == coincidence(&lifts[i], &lifts[j]).is_some(), || "coincidence disagrees".into())?;
        }
        report.push(format!("q={qn}: {} elements, {equal} equal-rotation pairs, {comms} commutators", elements.len()));
    }
    Ok(report.join("; "))
}

fn margulis_measures() -> Check {
    let gens: GroupGens = [("c".into(), c_bump()), ("X2".into(), xn_map(2).unwrap().clone())].into();
    let m = invariant_measure(&gens, 8, 4).map_err(|e| e.to_string())?;
    let atoms = vec![CirclePoint::zero(), CirclePoint::new(q(1, 2))];
    ensure(m == InvariantMeasure::Atomic(atoms.clone()), || format!("measure {m}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(50);
    for _ in 0..50 {
        let s = atoms[rng.gen_range(0..2)].clone();
        let e = atoms[rng.gen_range(0..2)].clone();
        let arc = if s == e {
            if rng.gen_bool(0.5) {
                Arc::point(s)
            } else {
                Arc::punctured(s)
            }
        } else {
            Arc::new(s.into_value(), e.into_value(), rng.gen_bool(0.5), rng.gen_bool(0.5)).unwrap()
        };
        for (name, g) in &gens {
            let (before, after) = (measure_arc(&m, &arc), measure_arc(&m, &g.image_arc(&arc)));
            ensure(before == after, || format!("{name} changes μ({arc}) from {before} to {after}"))?;
        }
    }
    let total = measure_set(&m, &ArcSet::full());
    let split = measure_arc(&m, &Arc::point(CirclePoint::zero())) + measure_arc(&m, &Arc::punctured(CirclePoint::zero()));
    ensure(total == Rational::one() && split == Rational::one(), || format!("total mass {total}, {split}"))?;

    let dense: GroupGens =
        [("a".into(), qz_embed(&q(1, 6)).unwrap()), ("b".into(), qz_embed(&q(1, 8)).unwrap())].into();
    let tables: Vec<InvariantMeasure> = [2, 3, 4]
        .iter()
        .map(|&l| stieltjes_table(&dense, l, 64))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    for t in &tables {
        let InvariantMeasure::StieltjesTable { samples, .. } = t else {
            return Err("expected a table".into());
        };
        ensure(samples.windows(2).all(|w| w[0].1 <= w[1].1), || "table decreases in the point".into())?;
    }
    for k in 0..128 {
        let p = CirclePoint::new(q(k, 128));
        let vals: Vec<Rational> = tables.iter().map(|t| t.phi_bar(&p)).collect();
        ensure(vals.windows(2).all(|w| w[0] <= w[1]), || format!("φ̄({p}) not monotone in length: {vals:?}"))?;
    }
    let sizes: Vec<usize> = tables
        .iter()
        .map(|t| match t {
            InvariantMeasure::StieltjesTable { samples, .. } => samples.len(),
            _ => 0,
        })
        .collect();
    Ok(format!("atoms 0, 1/2; table sizes {sizes:?}"))
}

/// One-bump map on `(a, b)` pushing right.
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

fn throw_off() -> Check {
    let cases: Vec<(&str, Vec<(String, PLIntervalMap)>, Vec<(Rational, Rational)>, Rational)> = vec![
        (
            "single orbital",
            vec![("f".into(), bump_on(q(0, 1), q(1, 1)))],
            vec![(q(0, 1), q(1, 1))],
            q(1, 8),
        ),
        (
            "two orbitals",
            vec![
                ("f".into(), bump_on(q(0, 1), q(1, 2))),
                ("g".into(), bump_on(q(1, 2), q(1, 1)).inverse()),
            ],
            vec![(q(0, 1), q(1, 2)), (q(1, 2), q(1, 1))],
            q(1, 16),
        ),
    ];
    let mut words = Vec::new();
    for (name, gens, comps, eps) in cases {
        let (w, m) = throw_off_search(&gens, &comps, &eps, &SearchBudget::default())
            .map_err(|e| format!("{name}: {e}"))?
            .ok_or_else(|| format!("{name}: nothing found"))?;
        let pointwise = comps.iter().all(|(a, b)| {
            let (c, d) = (a + &eps, b - &eps);
            m.eval(&d) < c || m.eval(&c) > d
        });
        ensure(pointwise, || format!("{name}: {w} does not displace"))?;
        ensure(displaces_all(&m, &comps, &eps), || format!("{name}: arc-set check disagrees"))?;
        words.push(format!("{name}: {w}"));
    }
    Ok(words.join("; "))
}

fn decomposition_round_trip() -> Check {
    let gens: GroupGens = [("c".into(), c_bump()), ("X2".into(), xn_map(2).unwrap().clone())].into();
    let w = structure_decomposition(&gens, 8, 4).map_err(|e| e.to_string())?;
    ensure(w.quotient == vec![q(0, 1), q(1, 2)], || format!("quotient {:?}", w.quotient))?;
    ensure(w.fundamental_domain == vec![Arc::open(q(0, 1), q(1, 2)).unwrap()], || {
        format!("domain {:?}", w.fundamental_domain)
    })?;
    ensure(w.verify(), || "structural check failed".into())?;
    let back = w.reassemble();
    let reached: HashSet<PLCircleMap> = ball(&back, 3).into_iter().map(|(_, m)| m).collect();
    for (word, g) in ball(&gens, 1) {
        ensure(reached.contains(&g), || format!("{word} not reproduced"))?;
    }
    Ok(format!("{} reassembled generators", back.len()))
}

fn enclosure_soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let width = Rational::new(2, DEFAULT_ITERATIONS as i64);
    let (mut found, mut drawn) = (0, 0);
    while found < 20 {
        drawn += 1;
        ensure(drawn <= 1000, || "too few elements without fixed points".into())?;
        let f = random_t(&mut rng);
        let exact = exact_rot(&f, 64)?;
        match rotation_number_with(&f, 1, DEFAULT_ITERATIONS).map_err(|e| e.to_string())? {
            RotationResult::Exact { value, .. } => {
                ensure(value == exact, || format!("low budget exact {value} ≠ {exact}"))?;
            }
            enc @ RotationResult::Enclosure { .. } => {
                let RotationResult::Enclosure { lo, hi, .. } = &enc else { unreachable!() };
                ensure(enc.contains(&exact), || format!("{enc} misses {exact}"))?;
                ensure(hi - lo <= width, || format!("{enc} wider than 2/{DEFAULT_ITERATIONS}"))?;
                found += 1;
            }
        }
    }
    Ok(format!("20 enclosures from {drawn} elements"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 10] = [
        ("Solodov pair reproduction", solodov_reproduction),
        ("X_n tower", xn_tower),
        ("rotation-number laws", rotation_laws),
        ("free-subgroup certificates", free_subgroup_certificates),
        ("homomorphism alternative", homomorphism_alternative),
        ("fixed points on wreath balls", commutator_fixed_points),
        ("invariant measures", margulis_measures),
        ("throw-off", throw_off),
        ("decomposition round trip", decomposition_round_trip),
        ("enclosure soundness", enclosure_soundness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS {}: {name} ({detail}) [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {}: {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
