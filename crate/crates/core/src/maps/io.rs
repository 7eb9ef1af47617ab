//! Text serialization of maps.
//!
//! ```text
//! plmap 1
//! circle
//! 0/1 1/4
//! 1/2 3/4
//! ```
//!
//! Line 2 is `circle` or `interval`. Each following line is one breakpoint
//! `x y` in increasing `x`, always written as explicit `p/q`. Circle files
//! list the designated lift from `x = 0`; interval files run from `0 0` to
//! `1 1`. Lines starting with `#` and blank lines are ignored.

use std::fmt::Write as _;
use std::str::FromStr;

use super::{PLCircleMap, PLIntervalMap};
use crate::error::{Error, Result};
use crate::exact::Rational;

pub const HEADER: &str = "plmap 1";

/// A map read from a file: either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PLMap {
    Circle(PLCircleMap),
    Interval(PLIntervalMap),
}

impl PLMap {
    /// Interval maps are circle maps fixing `0`.
    pub fn into_circle(self) -> PLCircleMap {
        match self {
            PLMap::Circle(c) => c,
            PLMap::Interval(i) => i.as_circle().clone(),
        }
    }

    pub fn into_interval(self) -> Result<PLIntervalMap> {
        match self {
            PLMap::Interval(i) => Ok(i),
            PLMap::Circle(c) => PLIntervalMap::from_circle(c),
        }
    }

    pub fn to_text(&self) -> String {
        match self {
            PLMap::Circle(c) => write_circle(c),
            PLMap::Interval(i) => write_interval(i),
        }
    }
}

fn write_points<'a>(kind: &str, points: impl Iterator<Item = (&'a Rational, &'a Rational)>) -> String {
    let mut out = format!("{HEADER}\n{kind}\n");
    for (x, y) in points {
        writeln!(out, "{} {}", x.to_pq_string(), y.to_pq_string()).expect("writing to a String");
    }
    out
}

pub fn write_circle(f: &PLCircleMap) -> String {
    write_points("circle", f.breakpoints())
}

pub fn write_interval(f: &PLIntervalMap) -> String {
    let pts = f.breakpoints();
    write_points("interval", pts.iter().map(|(x, y)| (x, y)))
}

impl FromStr for PLMap {
    type Err = Error;

    fn from_str(text: &str) -> Result<PLMap> {
        let err = |line: usize, message: String| Error::Parse {
            line: Some(line),
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (n, header) = lines.next().ok_or_else(|| err(1, "empty map file".into()))?;
        if header != HEADER {
            return Err(err(n, format!("expected header {HEADER:?}, found {header:?}")));
        }
        let (n, kind) = lines
            .next()
            .ok_or_else(|| err(n + 1, "missing map kind".into()))?;
        let circle = match kind {
            "circle" => true,
            "interval" => false,
            other => return Err(err(n, format!("unknown map kind {other:?}"))),
        };
        let mut points = Vec::new();
        let mut last_line = n;
        for (n, line) in lines {
            last_line = n;
            let mut parts = line.split_whitespace();
            let (Some(x), Some(y), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(err(n, format!("expected two fractions, found {line:?}")));
            };
            let x: Rational = x.parse().map_err(|e: Error| err(n, e.to_string()))?;
            let y: Rational = y.parse().map_err(|e: Error| err(n, e.to_string()))?;
            if let Some((px, py)) = points.last() {
                if x <= *px {
                    return Err(err(n, format!("abscissa {x} does not increase")));
                }
                if y <= *py {
                    return Err(err(n, format!("ordinate {y} does not increase")));
                }
            }
            points.push((x, y));
        }
        let map_err = |e: Error| match e {
            Error::InvalidMap(m) => err(last_line, m),
            other => other,
        };
        if circle {
            PLCircleMap::from_breakpoints(points).map(PLMap::Circle).map_err(map_err)
        } else {
            PLIntervalMap::from_breakpoints(points).map(PLMap::Interval).map_err(map_err)
        }
    }
}
