//! Fixed sets, orbitals and free-subgroup certificates.

mod pingpong;
mod search;

pub use pingpong::{ping_pong_search, ping_pong_search_named, verify_ping_pong, PingPongCertificate};
pub use search::{displaces_all, orbital_cover_search, throw_off_search};

use crate::error::{Error, Result};
use crate::exact::{Arc, ArcSet};
use crate::maps::PLCircleMap;

/// Bounds for the word and exponent searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_word_length: u32,
    pub max_m: u32,
    pub max_n: u32,
    pub max_k: u32,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_word_length: 6,
            max_m: 8,
            max_n: 64,
            max_k: 8,
        }
    }
}

impl SearchBudget {
    pub fn validate(&self) -> Result<()> {
        if self.max_word_length == 0 || self.max_m == 0 || self.max_n == 0 || self.max_k == 0 {
            return Err(Error::OutOfRange("search budget entries must be positive".into()));
        }
        Ok(())
    }
}

/// `Fix(f)`.
pub fn fixed_set(f: &PLCircleMap) -> ArcSet {
    f.fixed_set()
}

/// The orbitals of `f`: connected components of its support. A map without
/// fixed points has the whole circle as its only component.
pub fn support_components(f: &PLCircleMap) -> Vec<ArcSet> {
    let support = f.support();
    if support.is_full() {
        return vec![support];
    }
    support.arcs().iter().map(ArcSet::from_arc).collect()
}

/// The orbitals of `f` as arcs; `None` when `f` has no fixed point.
pub fn orbital_arcs(f: &PLCircleMap) -> Option<Vec<Arc>> {
    let support = f.support();
    (!support.is_full()).then(|| support.arcs())
}

/// `⋂ Fix(f_i)` for maps that all have fixed points.
pub fn common_fixed_set(maps: &[PLCircleMap]) -> Result<ArcSet> {
    let mut acc = ArcSet::full();
    for (i, f) in maps.iter().enumerate() {
        let fix = f.fixed_set();
        if fix.is_empty() {
            return Err(Error::Precondition(format!(
                "map {} has no fixed point, so its rotation number is not 0",
                i + 1
            )));
        }
        acc = acc.intersection(&fix);
    }
    Ok(acc)
}
