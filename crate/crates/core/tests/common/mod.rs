#![allow(dead_code)]

use plcircle::thompson::{f_generator_x0, f_generator_x1};
use plcircle::{q, Arc, PLCircleMap, Rational};
use rand::Rng;

/// The generator of `T` of order three.
pub fn t_generator_c() -> PLCircleMap {
    PLCircleMap::from_breakpoints(vec![(q(0, 1), q(3, 4)), (q(1, 2), q(1, 1)), (q(3, 4), q(3, 2))]).unwrap()
}

/// A random word of length 1..=6 in the standard generators of `T`.
pub fn random_t(rng: &mut impl Rng) -> PLCircleMap {
    let gens = [
        f_generator_x0().as_circle().clone(),
        f_generator_x1().as_circle().clone(),
        t_generator_c(),
    ];
    let mut f = PLCircleMap::identity();
    for _ in 0..rng.gen_range(1..=6) {
        let g = &gens[rng.gen_range(0..gens.len())];
        f = if rng.gen_bool(0.5) { f.compose(g) } else { f.compose(&g.inverse()) };
    }
    f
}

/// One-bump element of `F` supported in `(0, 1/2)`.
pub fn c_bump() -> PLCircleMap {
    f_generator_x0().squeeze_into(&Arc::open(q(0, 1), q(1, 2)).unwrap())
}

/// Two rot-0 maps pushing forward on `(0, 3/4)` and `(1/2, 5/4)`: their
/// supports cover the circle, so the product has no fixed point.
pub fn half_turn_pair() -> (PLCircleMap, PLCircleMap) {
    let f = PLCircleMap::from_breakpoints(vec![(q(0, 1), q(0, 1)), (q(1, 4), q(5, 8)), (q(3, 4), q(3, 4))]).unwrap();
    let g = f.conjugate_by(&PLCircleMap::rotation(&q(1, 2)));
    (f, g)
}

/// Breakpoint data of a circle map from integer weights: abscissas at
/// `k/64`, slopes given by the weights.
pub fn map_from_weights(cuts: &[u32], weights: &[u32], offset: u32) -> PLCircleMap {
    let mut xs: Vec<u32> = cuts.iter().map(|c| c % 64).filter(|&c| c != 0).collect();
    xs.push(0);
    xs.sort_unstable();
    xs.dedup();
    let total: u32 = weights.iter().take(xs.len()).sum();
    let mut y = Rational::new(i64::from(offset % 64), 64);
    let mut points = Vec::new();
    for (i, x) in xs.iter().enumerate() {
        points.push((Rational::new(i64::from(*x), 64), y.clone()));
        y += &Rational::new(i64::from(weights[i]), i64::from(total));
    }
    PLCircleMap::from_breakpoints(points).unwrap()
}
