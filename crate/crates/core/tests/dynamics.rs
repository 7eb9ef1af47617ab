mod common;

use std::collections::BTreeMap;

use common::random_t;
use plcircle::dynamics::{
    common_fixed_set, displaces_all, ping_pong_search, support_components, throw_off_search, verify_ping_pong,
    SearchBudget,
};
use plcircle::rotation::{rational_insertion, recurrence_witness, rotation_number};
use plcircle::thompson::{f_generator_x0, f_generator_x1, solodov_pair};
use plcircle::{q, ArcSet, LiftMap, PLCircleMap, PLIntervalMap, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn rotation_laws_on_random_t() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let (f, g) = (random_t(&mut rng), random_t(&mut rng));
        let r = rotation_number(&f, 64).unwrap();
        let rf = r.exact_value().expect("T elements have rational rotation numbers").clone();
        assert!(r.verify(&f));
        let conj = rotation_number(&f.conjugate_by(&g), 64).unwrap();
        assert_eq!(conj.exact_value(), Some(&rf));
        let cube = rotation_number(&f.power(3), 64).unwrap();
        assert_eq!(cube.exact_value(), Some(&(&rf * &Rational::from_integer(3)).fract()));
        assert_eq!(rf.is_zero(), !f.fixed_set().is_empty());
    }
}

#[test]
fn insertion_between_random_lifts() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut done = 0;
    while done < 10 {
        let f = random_t(&mut rng);
        let g = f.compose(&PLCircleMap::rotation(&q(1, 16)));
        let (fh, gh) = (LiftMap::hat(&f), LiftMap::hat(&g));
        if gh.eval(&Rational::zero()) <= fh.eval(&Rational::zero()) {
            continue;
        }
        let h = rational_insertion(&f, &g).unwrap();
        let hh = LiftMap::hat(&h);
        for k in 0..32 {
            let t = Rational::new(k, 32);
            let lo = fh.eval(&t);
            let mid = hh.eval(&t);
            let mid = mid.clone() - Rational::from_integer((&mid - &lo).floor_i64());
            assert!(lo < mid && mid < gh.eval(&t));
        }
        assert!(rotation_number(&h, 128).unwrap().is_exact());
        done += 1;
    }
}

#[test]
fn recurrence_on_irrational_like_rotation() {
    let f = PLCircleMap::rotation(&q(13, 89));
    let eps = q(1, 20);
    let w = recurrence_witness(&f, &eps).unwrap();
    assert!(w.verify(&f, &eps));
}

#[test]
fn solodov_ping_pong() {
    let (a, b) = solodov_pair();
    assert!(common_fixed_set(&[a.clone(), b.clone()]).unwrap().is_empty());
    let cert = ping_pong_search(&a, &b, &SearchBudget::default()).unwrap().unwrap();
    let gens: BTreeMap<String, PLCircleMap> = [("f".into(), a), ("g".into(), b)].into();
    assert!(verify_ping_pong(&cert, &gens).unwrap());
}

#[test]
fn support_components_of_solodov_a() {
    let (a, _) = solodov_pair();
    let comps = support_components(&a);
    assert_eq!(comps.len(), 2);
    let union = comps.iter().fold(ArcSet::empty(), |acc, c| acc.union(c));
    assert_eq!(union, a.support());
}

#[test]
fn throw_off_in_f() {
    let gens: Vec<(String, PLIntervalMap)> = vec![("x0".into(), f_generator_x0()), ("x1".into(), f_generator_x1())];
    let comps = [(q(0, 1), q(1, 1))];
    let eps = q(1, 8);
    let (w, m) = throw_off_search(&gens, &comps, &eps, &SearchBudget::default()).unwrap().unwrap();
    assert!(displaces_all(&m, &comps, &eps), "{w}");
}
