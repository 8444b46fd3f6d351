//! Exact rational arithmetic on the circle `R/Z`.
//!
//! Points are reduced fractions in `[0, 1)`; all comparisons are exact.
//! Intervals are open arcs traversed counterclockwise from `start` to
//! `end` (either endpoint may wrap past 0).

use std::fmt;

use num::{BigInt, BigRational, Signed, Zero};
use thiserror::Error;

pub type Rat = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RatParseError {
    #[error("invalid rational {0:?}: expected \"p/q\"")]
    Invalid(String),
    #[error("zero denominator in {0:?}")]
    ZeroDenominator(String),
}

pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parse `"p/q"` (or a bare integer `"p"`).
pub fn parse_rat(s: &str) -> Result<Rat, RatParseError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = num
        .trim()
        .parse()
        .map_err(|_| RatParseError::Invalid(s.to_string()))?;
    let d: BigInt = den
        .trim()
        .parse()
        .map_err(|_| RatParseError::Invalid(s.to_string()))?;
    if d.is_zero() {
        return Err(RatParseError::ZeroDenominator(s.to_string()));
    }
    Ok(Rat::new(n, d))
}

/// Render as `"p/q"` (always with explicit denominator).
pub fn rat_to_string(x: &Rat) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

/// Representative of `x` in `[0, 1)`.
pub fn frac(x: &Rat) -> Rat {
    x - x.floor()
}

/// Counterclockwise distance from `a` to `b`, in `[0, 1)`.
pub fn cyclic_distance(a: &Rat, b: &Rat) -> Rat {
    frac(&(b - a))
}

/// Cyclic orientation of three points of `[0, 1)`: `+1` if `y` comes
/// before `z` when walking counterclockwise from `x`, `-1` if after,
/// `0` if any two coincide.
pub fn cyclic_order(x: &Rat, y: &Rat, z: &Rat) -> i8 {
    let d1 = cyclic_distance(x, y);
    let d2 = cyclic_distance(x, z);
    if d1.is_zero() || d2.is_zero() || d1 == d2 {
        0
    } else if d1 < d2 {
        1
    } else {
        -1
    }
}

/// An open arc from `start` counterclockwise to `end`; both endpoints
/// in `[0, 1)` and distinct, so neither the empty set nor the full
/// circle is representable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleInterval {
    start: Rat,
    end: Rat,
}

impl CircleInterval {
    pub fn new(start: Rat, end: Rat) -> Self {
        let start = frac(&start);
        let end = frac(&end);
        assert!(start != end, "degenerate circle interval");
        CircleInterval { start, end }
    }

    pub fn start(&self) -> &Rat {
        &self.start
    }

    pub fn end(&self) -> &Rat {
        &self.end
    }

    pub fn length(&self) -> Rat {
        cyclic_distance(&self.start, &self.end)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        let x = frac(x);
        let d = cyclic_distance(&self.start, &x);
        !d.is_zero() && d < self.length()
    }

    pub fn closure_contains(&self, x: &Rat) -> bool {
        let x = frac(x);
        cyclic_distance(&self.start, &x) <= self.length()
    }

    /// Whole closed interval `other` inside the closure of `self`.
    pub fn closure_contains_interval(&self, other: &CircleInterval) -> bool {
        let off_start = cyclic_distance(&self.start, &other.start);
        let off_end = cyclic_distance(&self.start, &other.end);
        off_start <= off_end && off_end <= self.length()
    }

    pub fn closure_disjoint(&self, other: &CircleInterval) -> bool {
        !(self.closure_contains(&other.start)
            || self.closure_contains(&other.end)
            || other.closure_contains(&self.start)
            || other.closure_contains(&self.end))
    }

    pub fn overlaps(&self, other: &CircleInterval) -> bool {
        self.contains(&other.start)
            || self.contains(&other.end)
            || other.contains(&self.start)
            || other.contains(&self.end)
            || self == other
    }
}

impl fmt::Display for CircleInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", rat_to_string(&self.start), rat_to_string(&self.end))
    }
}

/// Components of the complement of a family of arcs with pairwise
/// disjoint closures, as closed gaps in counterclockwise order starting
/// after the arc with the smallest start point.
pub fn complement_gaps(arcs: &[CircleInterval]) -> Vec<CircleInterval> {
    assert!(!arcs.is_empty());
    let mut sorted: Vec<&CircleInterval> = arcs.iter().collect();
    sorted.sort_by(|a, b| a.start.cmp(&b.start));
    let mut gaps = Vec::with_capacity(sorted.len());
    for i in 0..sorted.len() {
        let next = sorted[(i + 1) % sorted.len()];
        gaps.push(CircleInterval::new(sorted[i].end.clone(), next.start.clone()));
    }
    gaps
}

pub fn is_positive(x: &Rat) -> bool {
    x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: (i64, i64), b: (i64, i64)) -> CircleInterval {
        CircleInterval::new(rat(a.0, a.1), rat(b.0, b.1))
    }

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rat("1/12").unwrap(), rat(1, 12));
        assert_eq!(parse_rat("3").unwrap(), rat(3, 1));
        assert_eq!(rat_to_string(&rat(2, 24)), "1/12");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn wrapping_membership() {
        let i = iv((10, 12), (2, 12)); // wraps through 0
        assert!(i.contains(&rat(11, 12)));
        assert!(i.contains(&rat(0, 1)));
        assert!(i.contains(&rat(1, 12)));
        assert!(!i.contains(&rat(2, 12)));
        assert!(!i.contains(&rat(5, 12)));
        assert!(i.closure_contains(&rat(2, 12)));
        assert_eq!(i.length(), rat(4, 12));
    }

    #[test]
    fn closure_disjointness() {
        let a = iv((1, 12), (2, 12));
        let b = iv((4, 12), (5, 12));
        let c = iv((2, 12), (3, 12)); // touches a at 2/12
        assert!(a.closure_disjoint(&b));
        assert!(!a.closure_disjoint(&c));
        assert!(!a.closure_disjoint(&a));
    }

    #[test]
    fn interval_containment() {
        let big = iv((1, 12), (6, 12));
        let small = iv((2, 12), (3, 12));
        let wrapping = iv((5, 12), (2, 12));
        assert!(big.closure_contains_interval(&small));
        assert!(big.closure_contains_interval(&big));
        assert!(!big.closure_contains_interval(&wrapping));
        assert!(!small.closure_contains_interval(&big));
    }

    #[test]
    fn complement_of_two_arcs() {
        let arcs = vec![iv((1, 12), (2, 12)), iv((7, 12), (8, 12))];
        let gaps = complement_gaps(&arcs);
        assert_eq!(gaps, vec![iv((2, 12), (7, 12)), iv((8, 12), (1, 12))]);
    }

    #[test]
    fn cyclic_order_convention() {
        let (x, y, z) = (rat(0, 1), rat(1, 12), rat(4, 12));
        assert_eq!(cyclic_order(&x, &y, &z), 1);
        assert_eq!(cyclic_order(&x, &z, &y), -1);
        assert_eq!(cyclic_order(&y, &z, &x), 1);
        assert_eq!(cyclic_order(&x, &x, &y), 0);
    }
}
