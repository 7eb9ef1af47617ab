use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::{PLCircleMap, PLIntervalMap};
use crate::error::{Error, Result};

/// Group operations shared by circle and interval maps.
pub trait Homeomorphism: Clone {
    fn identity() -> Self;
    /// `self ∘ other`.
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    fn power(&self, n: i64) -> Self;
}

impl Homeomorphism for PLCircleMap {
    fn identity() -> Self {
        PLCircleMap::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        PLCircleMap::compose(self, other)
    }
    fn inverse(&self) -> Self {
        PLCircleMap::inverse(self)
    }
    fn power(&self, n: i64) -> Self {
        PLCircleMap::power(self, n)
    }
}

impl Homeomorphism for PLIntervalMap {
    fn identity() -> Self {
        PLIntervalMap::identity()
    }
    fn compose(&self, other: &Self) -> Self {
        PLIntervalMap::compose(self, other)
    }
    fn inverse(&self) -> Self {
        PLIntervalMap::inverse(self)
    }
    fn power(&self, n: i64) -> Self {
        PLIntervalMap::power(self, n)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub name: String,
    pub exp: i64,
}

/// A word in named generators, freely reduced as a word: exponents are
/// nonzero and adjacent letters have distinct names. The rightmost letter
/// acts first.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn letter(name: &str) -> Word {
        Word::power_of(name, 1)
    }

    pub fn power_of(name: &str, exp: i64) -> Word {
        let mut w = Word::empty();
        w.push(name, exp);
        w
    }

    /// Appends `name^exp` on the right, merging with the last letter.
    pub fn push(&mut self, name: &str, exp: i64) {
        if exp == 0 {
            return;
        }
        if let Some(last) = self.letters.last_mut() {
            if last.name == name {
                last.exp += exp;
                if last.exp == 0 {
                    self.letters.pop();
                }
                return;
            }
        }
        self.letters.push(Letter {
            name: name.to_string(),
            exp,
        });
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for l in &other.letters {
            w.push(&l.name, l.exp);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        let mut w = Word::empty();
        for l in self.letters.iter().rev() {
            w.push(&l.name, -l.exp);
        }
        w
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut w = Word::empty();
        for _ in 0..n.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Length in the generators: the sum of `|exp|`.
    pub fn length(&self) -> u64 {
        self.letters.iter().map(|l| l.exp.unsigned_abs()).sum()
    }

    /// Evaluates the product, rightmost letter first.
    pub fn evaluate<M: Homeomorphism>(&self, gens: &BTreeMap<String, M>) -> Result<M> {
        let mut acc = M::identity();
        for l in &self.letters {
            let g = gens
                .get(&l.name)
                .ok_or_else(|| Error::UnboundGenerator(l.name.clone()))?;
            acc = acc.compose(&g.power(l.exp));
        }
        Ok(acc)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            if l.exp == 1 {
                write!(f, "{}", l.name)?;
            } else {
                write!(f, "{}^{}", l.name, l.exp)?;
            }
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        let mut w = Word::empty();
        let s = s.trim();
        if s == "1" || s.is_empty() {
            return Ok(w);
        }
        for tok in s.split_whitespace() {
            let (name, exp) = match tok.split_once('^') {
                Some((n, e)) => (
                    n,
                    e.parse::<i64>().map_err(|_| Error::Parse {
                        line: None,
                        message: format!("bad exponent in {tok:?}"),
                    })?,
                ),
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_alphanumeric() || c == '_') {
                return Err(Error::Parse {
                    line: None,
                    message: format!("bad generator name in {tok:?}"),
                });
            }
            w.push(name, exp);
        }
        Ok(w)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn push_reduces() {
        let w: Word = "f^2 f^-2".parse().unwrap();
        assert!(w.is_empty());
        let w: Word = "a b b^-1 a".parse().unwrap();
        assert_eq!(w.to_string(), "a^2");
        assert_eq!(w.length(), 2);
    }

    #[test]
    fn inverse_and_concat() {
        let w: Word = "f^2 g^-1".parse().unwrap();
        assert_eq!(w.inverse().to_string(), "g f^-2");
        assert!(w.concat(&w.inverse()).is_empty());
    }

    #[test]
    fn evaluation_acts_right_to_left() {
        let mut gens = BTreeMap::new();
        gens.insert("r".to_string(), PLCircleMap::rotation(&q(1, 4)));
        let w: Word = "r^3".parse().unwrap();
        assert_eq!(w.evaluate(&gens).unwrap(), PLCircleMap::rotation(&q(3, 4)));
        assert_eq!(Word::empty().evaluate(&gens).unwrap(), PLCircleMap::identity());
        let bad: Word = "s".parse().unwrap();
        assert_eq!(bad.evaluate(&gens), Err(Error::UnboundGenerator("s".into())));
    }
}
