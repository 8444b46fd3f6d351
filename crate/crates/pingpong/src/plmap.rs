//! Piecewise-linear orientation-preserving circle homeomorphisms with
//! exact rational breakpoints.
//!
//! A map is stored as its breakpoint pairs `(input, output)`; between
//! consecutive breakpoints the map is affine on lifts. Composition and
//! inversion stay within the representation, so no cumulative slope
//! products are ever needed.

use num::{One, Zero};
use thiserror::Error;

use crate::circle::{frac, Rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PLMapError {
    #[error("a PL circle map needs at least one breakpoint")]
    Empty,
    #[error("breakpoint inputs must be distinct mod 1")]
    DuplicateInput,
    #[error("breakpoint outputs must be strictly cyclically increasing")]
    NotIncreasing,
}

/// Orientation-preserving PL circle homeomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PLCircleMap {
    /// Sorted by input; inputs in `[0,1)`, outputs in `[0,1)`.
    breakpoints: Vec<(Rat, Rat)>,
}

impl PLCircleMap {
    pub fn new(mut breakpoints: Vec<(Rat, Rat)>) -> Result<Self, PLMapError> {
        if breakpoints.is_empty() {
            return Err(PLMapError::Empty);
        }
        for bp in &mut breakpoints {
            bp.0 = frac(&bp.0);
            bp.1 = frac(&bp.1);
        }
        breakpoints.sort_by(|a, b| a.0.cmp(&b.0));
        for w in breakpoints.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(PLMapError::DuplicateInput);
            }
        }
        // Outputs must wind once around the circle: distinct values with
        // exactly one cyclic descent.
        let n = breakpoints.len();
        if n > 1 {
            let mut descents = 0;
            for i in 0..n {
                let cur = &breakpoints[i].1;
                let next = &breakpoints[(i + 1) % n].1;
                if next == cur {
                    return Err(PLMapError::NotIncreasing);
                }
                if next < cur {
                    descents += 1;
                }
            }
            if descents != 1 {
                return Err(PLMapError::NotIncreasing);
            }
        }
        Ok(PLCircleMap { breakpoints })
    }

    /// Rigid rotation by `amount`.
    pub fn rotation(amount: &Rat) -> Self {
        PLCircleMap {
            breakpoints: vec![(Rat::zero(), frac(amount))],
        }
    }

    pub fn identity() -> Self {
        Self::rotation(&Rat::zero())
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.breakpoints
    }

    /// Breakpoints lifted to one fundamental domain: inputs
    /// `x_0 < ... < x_{B-1} < x_0 + 1`, outputs strictly increasing.
    fn lifted(&self) -> Vec<(Rat, Rat)> {
        let n = self.breakpoints.len();
        let mut out = Vec::with_capacity(n + 1);
        let mut bump = Rat::zero();
        for i in 0..n {
            if i > 0 && self.breakpoints[i].1 < self.breakpoints[i - 1].1 {
                bump = Rat::one();
            }
            out.push((
                self.breakpoints[i].0.clone(),
                &self.breakpoints[i].1 + &bump,
            ));
        }
        out.push((
            &self.breakpoints[0].0 + Rat::one(),
            out[0].1.clone() + Rat::one(),
        ));
        out
    }

    /// Exact image of a circle point.
    pub fn eval(&self, x: &Rat) -> Rat {
        let lifted = self.lifted();
        let mut t = frac(x);
        if t < lifted[0].0 {
            t += Rat::one();
        }
        let mut seg = 0;
        while seg + 1 < lifted.len() - 1 && lifted[seg + 1].0 <= t {
            seg += 1;
        }
        let (x0, y0) = &lifted[seg];
        let (x1, y1) = &lifted[seg + 1];
        let y = y0 + (t - x0) * (y1 - y0) / (x1 - x0);
        frac(&y)
    }

    /// Value of the canonical lift at a real point: the unique lift `F`
    /// with `F(0) = eval(0) in [0,1)`, extended by `F(x+1) = F(x)+1`.
    pub fn canonical_lift_eval(&self, x: &Rat) -> Rat {
        let f0 = self.eval(&Rat::zero());
        let fx = self.eval(&frac(x));
        let wrap = if fx < f0 { Rat::one() } else { Rat::zero() };
        fx + wrap + x.floor()
    }

    /// Value at `x` of the inverse of the canonical lift of `self`.
    pub fn canonical_lift_inverse_eval(&self, x: &Rat) -> Rat {
        let z0 = self.inverse().eval(&frac(x));
        let fz0 = self.canonical_lift_eval(&z0);
        // x - F(z0) is an integer by construction.
        &z0 + x - fz0
    }

    pub fn inverse(&self) -> Self {
        let bps = self
            .breakpoints
            .iter()
            .map(|(x, y)| (y.clone(), x.clone()))
            .collect();
        PLCircleMap::new(bps).expect("inverse of a homeomorphism is a homeomorphism")
    }

    /// `self` after `inner`: `x -> self(inner(x))`.
    pub fn compose(&self, inner: &PLCircleMap) -> Self {
        let inner_inv = inner.inverse();
        let mut xs: Vec<Rat> = inner.breakpoints.iter().map(|(x, _)| x.clone()).collect();
        xs.extend(self.breakpoints.iter().map(|(x, _)| inner_inv.eval(x)));
        xs.sort();
        xs.dedup();
        let bps = xs
            .into_iter()
            .map(|x| {
                let y = self.eval(&inner.eval(&x));
                (x, y)
            })
            .collect();
        PLCircleMap::new(bps).expect("composition of homeomorphisms is a homeomorphism")
    }

    pub fn is_identity(&self) -> bool {
        self.breakpoints.iter().all(|(x, y)| x == y)
    }

    /// Slopes of the affine pieces, paired with the input interval start.
    pub fn slopes(&self) -> Vec<(Rat, Rat)> {
        let lifted = self.lifted();
        lifted
            .windows(2)
            .map(|w| {
                let slope = (&w[1].1 - &w[0].1) / (&w[1].0 - &w[0].0);
                (w[0].0.clone(), slope)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::rat;

    fn bp(pairs: &[((i64, i64), (i64, i64))]) -> PLCircleMap {
        PLCircleMap::new(
            pairs
                .iter()
                .map(|((a, b), (c, d))| (rat(*a, *b), rat(*c, *d)))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn rotation_eval() {
        let r = PLCircleMap::rotation(&rat(1, 3));
        assert_eq!(r.eval(&rat(1, 2)), rat(5, 6));
        assert_eq!(r.eval(&rat(5, 6)), rat(1, 6));
    }

    #[test]
    fn piecewise_eval_and_inverse() {
        // Maps [0,1/4] onto [0,1/2] and [1/4,1] onto [1/2,1].
        let f = bp(&[((0, 1), (0, 1)), ((1, 4), (1, 2))]);
        assert_eq!(f.eval(&rat(1, 8)), rat(1, 4));
        assert_eq!(f.eval(&rat(1, 2)), rat(2, 3));
        let g = f.inverse();
        assert_eq!(g.eval(&rat(1, 4)), rat(1, 8));
        assert!(f.compose(&g).is_identity());
        assert!(g.compose(&f).is_identity());
    }

    #[test]
    fn composition_matches_pointwise() {
        let f = bp(&[((0, 1), (1, 3)), ((1, 2), (3, 4))]);
        let g = bp(&[((1, 8), (1, 2)), ((5, 8), (7, 8))]);
        let gf = g.compose(&f);
        for num in 0..16 {
            let x = rat(num, 16);
            assert_eq!(gf.eval(&x), g.eval(&f.eval(&x)), "x = {num}/16");
        }
    }

    #[test]
    fn invalid_maps_rejected() {
        assert_eq!(PLCircleMap::new(vec![]).unwrap_err(), PLMapError::Empty);
        let dup = vec![(rat(0, 1), rat(0, 1)), (rat(0, 1), rat(1, 2))];
        assert_eq!(PLCircleMap::new(dup).unwrap_err(), PLMapError::DuplicateInput);
        // Orientation-reversing data: outputs wind backwards.
        let rev = vec![
            (rat(0, 1), rat(0, 1)),
            (rat(1, 3), rat(2, 3)),
            (rat(2, 3), rat(1, 3)),
        ];
        assert_eq!(PLCircleMap::new(rev).unwrap_err(), PLMapError::NotIncreasing);
    }

    #[test]
    fn canonical_lift_commutes_with_translation() {
        let f = bp(&[((1, 8), (1, 2)), ((5, 8), (7, 8))]);
        for num in -8..8 {
            let x = rat(num, 4);
            let lhs = f.canonical_lift_eval(&(&x + rat(1, 1)));
            let rhs = f.canonical_lift_eval(&x) + rat(1, 1);
            assert_eq!(lhs, rhs);
        }
        let f0 = f.canonical_lift_eval(&rat(0, 1));
        assert!(f0 >= rat(0, 1) && f0 < rat(1, 1));
    }

    #[test]
    fn canonical_lift_inverse_is_inverse() {
        let f = bp(&[((1, 8), (1, 2)), ((5, 8), (7, 8))]);
        for num in -6..6 {
            let x = rat(num, 5);
            let y = f.canonical_lift_eval(&x);
            assert_eq!(f.canonical_lift_inverse_eval(&y), x);
        }
    }
}
