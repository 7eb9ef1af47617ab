//! Thompson's groups `F` and `T`: membership, the tower of maps `X_n`
//! realizing `Q/Z` inside `T`, wreath generators, and the Solodov pair.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::exact::{q, Arc, Rational};
use crate::maps::{PLCircleMap, PLIntervalMap};

/// Largest `n` accepted by [`xn_map`].
pub const MAX_XN: u32 = 7;

/// All breakpoints and their images dyadic, all slopes powers of two.
pub fn t_membership(f: &PLCircleMap) -> bool {
    f.breakpoints().all(|(x, y)| x.is_dyadic() && y.is_dyadic())
        && f.slopes().iter().all(Rational::is_power_of_two)
}

/// [`t_membership`] plus `f(0) = 0`.
pub fn f_membership(f: &PLCircleMap) -> bool {
    f.lift_at_zero().is_zero() && t_membership(f)
}

/// Proportions used to cut an interval into `2n - 1` dyadic pieces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionScheme {
    n: u32,
    proportions: Vec<Rational>,
}

impl PartitionScheme {
    /// `(1/2, 1/4, ..., 1/2^(2n-2), 1/2^(2n-2))`.
    pub fn standard(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::OutOfRange(format!("partition schemes need n ≥ 2, got {n}")));
        }
        let mut proportions: Vec<Rational> = (1..=2 * n - 2).map(|k| Rational::new(1, 1 << k)).collect();
        proportions.push(proportions.last().expect("n ≥ 2").clone());
        Self::new(n, proportions)
    }

    pub fn new(n: u32, proportions: Vec<Rational>) -> Result<Self> {
        if proportions.len() != (2 * n - 1) as usize {
            return Err(Error::OutOfRange(format!("expected {} proportions", 2 * n - 1)));
        }
        if !proportions.iter().all(|p| p.is_power_of_two() && p.is_positive()) {
            return Err(Error::OutOfRange("proportions must be powers of 1/2".into()));
        }
        let total = proportions.iter().fold(Rational::zero(), |acc, p| acc + p);
        if total != Rational::one() {
            return Err(Error::OutOfRange(format!("proportions sum to {total}, not 1")));
        }
        Ok(PartitionScheme { n, proportions })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn proportions(&self) -> &[Rational] {
        &self.proportions
    }
}

/// The partition of the circle acted on by `X_n`: interval lengths starting
/// at `0`, alternating `J, I, J, I, ...`.
fn partition_lengths(n: u32) -> Vec<Rational> {
    let mut lengths = vec![q(1, 4); 4];
    for m in 3..=n {
        let scheme = PartitionScheme::standard(m).expect("m ≥ 3");
        let mut next = Vec::with_capacity(lengths.len() / 2 * (2 * m as usize));
        for pair in lengths.chunks(2) {
            next.push(pair[0].clone());
            next.extend(scheme.proportions().iter().map(|p| &pair[1] * p));
        }
        lengths = next;
    }
    lengths
}

/// The map sending each interval of a partition linearly onto the one two
/// places further on.
fn shift_by_two(lengths: &[Rational]) -> PLCircleMap {
    let mut starts = Vec::with_capacity(lengths.len());
    let mut acc = Rational::zero();
    for l in lengths {
        starts.push(acc.clone());
        acc += l;
    }
    let m = starts.len();
    let points = (0..m)
        .map(|k| {
            let y = if k + 2 < m {
                starts[k + 2].clone()
            } else {
                &starts[k + 2 - m] + &Rational::one()
            };
            (starts[k].clone(), y)
        })
        .collect();
    PLCircleMap::from_breakpoints(points).expect("shift by two is a valid map")
}

/// `X_n`, for `1 ≤ n ≤ 7`. Built once per process.
pub fn xn_map(n: u32) -> Result<&'static PLCircleMap> {
    static CACHE: [OnceLock<PLCircleMap>; MAX_XN as usize] = [const { OnceLock::new() }; MAX_XN as usize];
    if n == 0 || n > MAX_XN {
        return Err(Error::OutOfRange(format!("X_n is available for 1 ≤ n ≤ {MAX_XN}, got {n}")));
    }
    Ok(CACHE[(n - 1) as usize].get_or_init(|| {
        if n == 1 {
            PLCircleMap::identity()
        } else {
            shift_by_two(&partition_lengths(n))
        }
    }))
}

/// The interval `J_{2,1} = [0, 1/4]` that every `X_n` permutes freely.
pub fn j21() -> Arc {
    Arc::closed(Rational::zero(), q(1, 4)).expect("valid arc")
}

fn factorial(n: u32) -> u64 {
    (1..=u64::from(n)).product()
}

/// The image of `x mod 1` under the embedding `Q/Z -> T`: `X_n^m` for the
/// least `n` with `q | n!`, where `x = m / n!`.
pub fn qz_embed(x: &Rational) -> Result<PLCircleMap> {
    let x = x.fract();
    let den = x
        .denom()
        .to_u64()
        .ok_or_else(|| Error::OutOfRange(format!("denominator of {x} too large")))?;
    let n = (1..=MAX_XN)
        .find(|&n| factorial(n) % den == 0)
        .ok_or_else(|| Error::OutOfRange(format!("{x} needs X_n beyond n = {MAX_XN}")))?;
    let nf = factorial(n);
    let m = x.numer().to_i64().expect("numerator below denominator") * (nf / den) as i64;
    Ok(xn_map(n)?.power(m))
}

/// The standard generator `x0` of `F`.
pub fn f_generator_x0() -> PLIntervalMap {
    PLIntervalMap::from_breakpoints(vec![
        (q(0, 1), q(0, 1)),
        (q(1, 2), q(1, 4)),
        (q(3, 4), q(1, 2)),
        (q(1, 1), q(1, 1)),
    ])
    .expect("valid map")
}

/// The standard generator `x1` of `F`.
pub fn f_generator_x1() -> PLIntervalMap {
    PLIntervalMap::from_breakpoints(vec![
        (q(0, 1), q(0, 1)),
        (q(1, 2), q(1, 2)),
        (q(3, 4), q(5, 8)),
        (q(7, 8), q(3, 4)),
        (q(1, 1), q(1, 1)),
    ])
    .expect("valid map")
}

/// Generators of `F ≀ Z/q` inside `T`: `top = qz_embed(1/q)` and the two
/// generators of `F` squeezed into `J_{2,1}`.
pub fn wreath_ft_generators(qn: u64) -> Result<BTreeMap<String, PLCircleMap>> {
    if qn == 0 {
        return Err(Error::OutOfRange("q must be positive".into()));
    }
    let top = qz_embed(&Rational::new(1, qn as i64))?;
    let j = j21();
    Ok(BTreeMap::from([
        ("top".to_string(), top),
        ("x0".to_string(), f_generator_x0().squeeze_into(&j)),
        ("x1".to_string(), f_generator_x1().squeeze_into(&j)),
    ]))
}

/// The pair `(a, b)` of the Solodov counterexample.
pub fn solodov_pair() -> (PLCircleMap, PLCircleMap) {
    let f = [
        (q(0, 1), q(0, 1)),
        (q(3, 32), q(3, 8)),
        (q(1, 8), q(13, 32)),
    ];
    let half = q(1, 2);
    let points = f
        .iter()
        .cloned()
        .chain(f.iter().map(|(x, y)| (x + &half, y + &half)))
        .collect();
    let a = PLCircleMap::from_breakpoints(points).expect("valid map");
    let b = a.conjugate_by(&PLCircleMap::rotation(&q(1, 4)));
    (a, b)
}

/// The arcs `R_1, ..., R_4` of the Solodov configuration.
pub fn solodov_arcs() -> [Arc; 4] {
    [(1, 8), (3, 8), (5, 8), (7, 8)].map(|(p, d)| {
        let s = q(p, d);
        let e = &s + &q(1, 8);
        Arc::closed(s, e).expect("valid arc")
    })
}
