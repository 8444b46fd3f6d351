//! The circular order on the group induced by a realization, its
//! cocycle identities, and the lifted linear order on the central
//! extension by the integers.

use std::cmp::Ordering;
use std::fmt;

use num::{One, Signed, Zero};

use crate::circle::{cyclic_order, frac, Rat};
use crate::freegroup::{ball, Word};
use crate::realize::Realization;

/// Circular comparison of three group elements: cyclic orientation of
/// the basepoint images; `0` exactly when two of the words coincide.
pub fn circular_order(r: &Realization, g1: &Word, g2: &Word, g3: &Word) -> i8 {
    let x = r.basepoint();
    cyclic_order(&r.apply(g1, &x), &r.apply(g2, &x), &r.apply(g3, &x))
}

/// A violated order identity, with the witnessing elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderDefect {
    Cocycle([Word; 4]),
    Homogeneity { multiplier: Word, triple: [Word; 3] },
}

impl fmt::Display for OrderDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrderDefect::Cocycle(q) => {
                write!(f, "cocycle identity fails on ({}, {}, {}, {})", q[0], q[1], q[2], q[3])
            }
            OrderDefect::Homogeneity { multiplier, triple } => write!(
                f,
                "homogeneity fails for multiplier {} on ({}, {}, {})",
                multiplier, triple[0], triple[1], triple[2]
            ),
        }
    }
}

/// Verify the 2-cocycle identity on every quadruple from the ball of
/// the given radius, and homogeneity for each supplied multiplier on
/// every triple.
pub fn cocycle_check(
    r: &Realization,
    radius: usize,
    multipliers: &[Word],
) -> Result<(), OrderDefect> {
    let elements = ball(r.cfg().rank(), radius);
    let x = r.basepoint();
    let points: Vec<Rat> = elements.iter().map(|g| r.apply(g, &x)).collect();
    let c = |i: usize, j: usize, k: usize| cyclic_order(&points[i], &points[j], &points[k]);

    let n = elements.len();
    for g0 in 0..n {
        for g1 in 0..n {
            for g2 in 0..n {
                for g3 in 0..n {
                    let defect = c(g1, g2, g3) - c(g0, g2, g3) + c(g0, g1, g3) - c(g0, g1, g2);
                    if defect != 0 {
                        return Err(OrderDefect::Cocycle([
                            elements[g0].clone(),
                            elements[g1].clone(),
                            elements[g2].clone(),
                            elements[g3].clone(),
                        ]));
                    }
                }
            }
        }
    }

    for gamma in multipliers {
        let shifted: Vec<Rat> = points.iter().map(|p| r.apply(gamma, p)).collect();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = cyclic_order(&shifted[i], &shifted[j], &shifted[k]);
                    if lhs != c(i, j, k) {
                        return Err(OrderDefect::Homogeneity {
                            multiplier: gamma.clone(),
                            triple: [
                                elements[i].clone(),
                                elements[j].clone(),
                                elements[k].clone(),
                            ],
                        });
                    }
                }
            }
        }
    }
    Ok(())
}

/// An element of the central extension of the group by the integers:
/// a word together with the central coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CentralElement {
    pub word: Word,
    pub shift: i64,
}

impl CentralElement {
    pub fn new(word: Word, shift: i64) -> Self {
        CentralElement { word, shift }
    }

    /// The central generator `z = (identity, 1)`.
    pub fn central(rank: usize) -> Self {
        CentralElement::new(Word::identity(rank), 1)
    }

    pub fn multiply(&self, other: &CentralElement) -> CentralElement {
        CentralElement {
            word: self.word.multiply(&other.word).expect("rank mismatch"),
            shift: self.shift + other.shift,
        }
    }
}

impl fmt::Display for CentralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.word, self.shift)
    }
}

/// Value at the real basepoint 0 of the canonical lift of a word:
/// generators lift with value at 0 in `[0,1)`, inverse letters act by
/// the exact inverse lift, so the assignment is a homomorphism to line
/// maps commuting with unit translation.
pub fn lift_value(r: &Realization, w: &Word) -> Rat {
    let mut x = Rat::zero();
    for l in w.letters().iter().rev() {
        let map = r.letter_map(l.generator());
        x = if l.is_inverted() {
            map.canonical_lift_inverse_eval(&x)
        } else {
            map.canonical_lift_eval(&x)
        };
    }
    x
}

/// Lifted orbit value of a central element at the real basepoint.
pub fn linear_value(r: &Realization, u: &CentralElement) -> Rat {
    lift_value(r, &u.word) + Rat::from_integer(u.shift.into())
}

/// The linear order on the central extension: compare lifted orbit
/// values. Equal exactly for equal elements.
pub fn linear_compare(r: &Realization, u: &CentralElement, v: &CentralElement) -> Ordering {
    linear_value(r, u).cmp(&linear_value(r, v))
}

/// Smallest `N > 0` with `(id, N)` above `(g, 0)` and `(id, -N)` below
/// it: one more than the integer part of the lift value's magnitude.
pub fn cofinal_bound(r: &Realization, g: &Word) -> i64 {
    let v = lift_value(r, g);
    let floor: num::BigInt = v.abs().floor().to_integer();
    let n: i64 = i64::try_from(&floor).expect("lift value within i64 range") + 1;
    n
}

/// The circular order recovered from the linear order: pick for each
/// word its unique representative with lift value in `[0,1)` and return
/// the sign of the permutation sorting the three values.
pub fn quotient_circular(r: &Realization, g1: &Word, g2: &Word, g3: &Word) -> i8 {
    let values: Vec<Rat> = [g1, g2, g3]
        .iter()
        .map(|g| frac(&lift_value(r, g)))
        .collect();
    if values[0] == values[1] || values[0] == values[2] || values[1] == values[2] {
        return 0;
    }
    let mut inversions = 0;
    for i in 0..3 {
        for j in i + 1..3 {
            if values[i] > values[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Check that two realizations of the same configuration induce the
/// same circular order on the ball of the given radius.
pub fn order_agreement(
    ra: &Realization,
    rb: &Realization,
    radius: usize,
) -> Result<(), [Word; 3]> {
    assert_eq!(ra.cfg().rank(), rb.cfg().rank());
    let elements = ball(ra.cfg().rank(), radius);
    let pa: Vec<Rat> = elements.iter().map(|g| ra.apply(g, &ra.basepoint())).collect();
    let pb: Vec<Rat> = elements.iter().map(|g| rb.apply(g, &rb.basepoint())).collect();
    let n = elements.len();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if cyclic_order(&pa[i], &pa[j], &pa[k]) != cyclic_order(&pb[i], &pb[j], &pb[k]) {
                    return Err([
                        elements[i].clone(),
                        elements[j].clone(),
                        elements[k].clone(),
                    ]);
                }
            }
        }
    }
    Ok(())
}

/// Convenience used by the canonical-lift invariant: the lift of each
/// generator must start in `[0,1)`.
pub fn generator_lift_in_unit_interval(r: &Realization) -> bool {
    (0..r.cfg().rank()).all(|g| {
        let w = Word::new(r.cfg().rank(), [crate::freegroup::Letter::new(g, false)]).unwrap();
        let v = lift_value(r, &w);
        v >= Rat::zero() && v < Rat::one()
    })
}
