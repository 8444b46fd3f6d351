//! Surface bookkeeping for a configuration: how the outer gaps move
//! under the adjacent letters' inverses, the boundary components of the
//! glued surface, its Euler characteristic, and the isolation verdict.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::config::{ArcId, Configuration, GapId};

/// For every outer gap, the two gaps reachable through the adjacent
/// arcs: `left` moves through the inverse of the letter carried by the
/// arc counterclockwise-left of the gap, `right` through the inverse of
/// the letter on its right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapMoveTable {
    left: Vec<GapId>,
    right: Vec<GapId>,
}

impl GapMoveTable {
    pub fn left_move(&self, g: GapId) -> GapId {
        self.left[g.0]
    }

    pub fn right_move(&self, g: GapId) -> GapId {
        self.right[g.0]
    }

    pub fn len(&self) -> usize {
        self.right.len()
    }

    pub fn is_empty(&self) -> bool {
        self.right.is_empty()
    }
}

/// Combinatorial move rules. For gap `g` between arc `j` (carrying `s`,
/// occurrence `i`) and arc `j+1` (carrying `t`, occurrence `i'`):
/// under `s^{-1}` the gap lands left-adjacent to the cycle-successor of
/// arc `j`; under `t^{-1}` it lands right-adjacent to the
/// cycle-predecessor of arc `j+1`.
pub fn gap_moves(cfg: &Configuration) -> GapMoveTable {
    let m = cfg.arc_count();
    let mut left = Vec::with_capacity(m);
    let mut right = Vec::with_capacity(m);
    for j in 0..m {
        // Move through the left arc j: image ends at the left endpoint
        // of occurrence (i + 1 - o_s) of s^{-1}.
        let s = cfg.letter_at(ArcId(j));
        let i = cfg.occurrence_index(j);
        let succ = cfg.gap_target_occurrence(s.inverse(), i);
        let p = cfg.positions(s.inverse())[succ];
        left.push(GapId((p + m - 1) % m));

        // Move through the right arc j+1: image starts at the right
        // endpoint of occurrence (i' - o_t) of t^{-1}.
        let jr = (j + 1) % m;
        let t = cfg.letter_at(ArcId(jr));
        let i2 = cfg.occurrence_index(jr);
        let k = cfg.k(t.gen_index());
        let pred = (i2 + k - cfg.letter_offset(t)) % k;
        let q = cfg.positions(t.inverse())[pred];
        right.push(GapId(q));
    }
    GapMoveTable { left, right }
}

/// Minimal union-find over gap indices.
struct UnionFind {
    parents: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parents: (0..n).collect(),
        }
    }

    fn root(&mut self, mut x: usize) -> usize {
        while self.parents[x] != x {
            self.parents[x] = self.parents[self.parents[x]];
            x = self.parents[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.root(a), self.root(b));
        self.parents[ra] = rb;
    }
}

/// Cycles of the `right_move` permutation, each starting at its
/// smallest gap, ordered by that smallest gap. Cross-checked against
/// the partition generated by both moves.
pub fn boundary_components(cfg: &Configuration) -> Vec<Vec<GapId>> {
    let moves = gap_moves(cfg);
    let m = moves.len();
    let mut seen = vec![false; m];
    let mut cycles = Vec::new();
    for start in 0..m {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut g = GapId(start);
        loop {
            assert!(!seen[g.0], "right moves must form a permutation");
            seen[g.0] = true;
            cycle.push(g);
            g = moves.right_move(g);
            if g.0 == start {
                break;
            }
        }
        cycles.push(cycle);
    }

    // Independent route: classes of the relation generated by both moves.
    let mut uf = UnionFind::new(m);
    for g in 0..m {
        uf.union(g, moves.left_move(GapId(g)).0);
        uf.union(g, moves.right_move(GapId(g)).0);
    }
    let mut class_of_cycle = Vec::new();
    for cycle in &cycles {
        let root = uf.root(cycle[0].0);
        for &g in cycle {
            assert_eq!(
                uf.root(g.0),
                root,
                "cycle must stay within one equivalence class"
            );
        }
        class_of_cycle.push(root);
    }
    class_of_cycle.sort_unstable();
    class_of_cycle.dedup();
    assert_eq!(
        class_of_cycle.len(),
        cycles.len(),
        "cycle partition must equal the two-move class partition"
    );

    cycles
}

/// `chi = 1 + sum_a (1 - 2 k(a))`: the disc plus one face and `2 k(a)`
/// edges per generator.
pub fn euler_characteristic(cfg: &Configuration) -> i64 {
    let mut chi = 1i64;
    for g in 0..cfg.rank() {
        chi += 1 - 2 * cfg.k(g) as i64;
    }
    chi
}

/// Classification result for a configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub boundary_count: usize,
    pub chi: i64,
    pub genus: u64,
    pub isolated: bool,
    pub boundary_cycles: Vec<Vec<GapId>>,
}

impl Serialize for Verdict {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("Verdict", 5)?;
        s.serialize_field("boundary_count", &self.boundary_count)?;
        s.serialize_field("chi", &self.chi)?;
        s.serialize_field("genus", &self.genus)?;
        s.serialize_field("isolated", &self.isolated)?;
        let cycles: Vec<Vec<usize>> = self
            .boundary_cycles
            .iter()
            .map(|c| c.iter().map(|g| g.0).collect())
            .collect();
        s.serialize_field("cycles", &cycles)?;
        s.end()
    }
}

/// Assemble the verdict. `isolated` records that the configuration
/// satisfies the combinatorial criterion for isolation (a single
/// boundary component).
pub fn classify(cfg: &Configuration) -> Verdict {
    let boundary_cycles = boundary_components(cfg);
    let boundary_count = boundary_cycles.len();
    let chi = euler_characteristic(cfg);
    let two_genus = 2 - chi - boundary_count as i64;
    assert!(
        two_genus >= 0 && two_genus % 2 == 0,
        "orientable genus must be a nonnegative integer"
    );
    assert_eq!(
        boundary_count % 2,
        (cfg.rank() + 1) % 2,
        "boundary count parity must match rank + 1"
    );
    Verdict {
        boundary_count,
        chi,
        genus: (two_genus / 2) as u64,
        isolated: boundary_count == 1,
        boundary_cycles,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(rank: usize, word: &str, offsets: &[usize]) -> Configuration {
        Configuration::parse(rank, word, offsets).unwrap()
    }

    #[test]
    fn schottky_moves() {
        let moves = gap_moves(&cfg(2, "abAB", &[0, 0]));
        // The gap between the a- and b-arcs, moved through its left
        // arc a, lands at the gap left-adjacent to the A-arc.
        assert_eq!(moves.left_move(GapId(0)), GapId(1));
        assert_eq!(moves.right_move(GapId(0)), GapId(3));
    }

    #[test]
    fn moves_are_mutually_inverse_permutations() {
        for (word, offsets) in [
            ("abAB", vec![0, 0]),
            ("aAbB", vec![0, 0]),
            ("BABabAba", vec![0, 1]),
            ("BABabAba", vec![1, 1]),
            ("aAbBcC", vec![0, 0, 0]),
        ] {
            let c = cfg(if offsets.len() == 3 { 3 } else { 2 }, word, &offsets);
            let moves = gap_moves(&c);
            for g in 0..moves.len() {
                let g = GapId(g);
                assert_eq!(moves.left_move(moves.right_move(g)), g);
                assert_eq!(moves.right_move(moves.left_move(g)), g);
            }
        }
    }

    #[test]
    fn schottky_has_one_boundary_component() {
        let cycles = boundary_components(&cfg(2, "abAB", &[0, 0]));
        assert_eq!(cycles.len(), 1);
        assert_eq!(cycles[0].len(), 4);
    }

    #[test]
    fn unlinked_word_has_three_classes() {
        let cycles = boundary_components(&cfg(2, "aAbB", &[0, 0]));
        assert_eq!(cycles.len(), 3);
    }

    #[test]
    fn euler_characteristic_examples() {
        assert_eq!(euler_characteristic(&cfg(2, "abAB", &[0, 0])), -1);
        assert_eq!(euler_characteristic(&cfg(2, "BABabAba", &[0, 0])), -5);
        assert_eq!(euler_characteristic(&cfg(3, "abcABC", &[0, 0, 0])), -2);
    }

    #[test]
    fn schottky_verdict() {
        let v = classify(&cfg(2, "abAB", &[0, 0]));
        assert_eq!(
            (v.boundary_count, v.chi, v.genus, v.isolated),
            (1, -1, 1, true)
        );
    }

    #[test]
    fn exotic_offset_search() {
        // Of the four offset choices on the 8-arc word, exactly two
        // yield a single boundary component.
        let mut isolated = Vec::new();
        for oa in 0..2 {
            for ob in 0..2 {
                let v = classify(&cfg(2, "BABabAba", &[oa, ob]));
                assert_eq!(v.chi, -5);
                assert!(v.boundary_count == 1 || v.boundary_count == 3);
                if v.isolated {
                    isolated.push((oa, ob));
                }
            }
        }
        assert_eq!(isolated, vec![(0, 0), (0, 1)]);
    }

    #[test]
    fn exotic_fixture_verdict() {
        let v = classify(&cfg(2, "BABabAba", &[0, 0]));
        assert_eq!(
            (v.boundary_count, v.chi, v.genus, v.isolated),
            (1, -5, 3, true)
        );
    }

    #[test]
    fn rank_three_is_never_isolated() {
        let v = classify(&cfg(3, "abcABC", &[0, 0, 0]));
        assert_eq!(v.boundary_count % 2, 0);
        assert!(!v.isolated);
    }

    #[test]
    fn verdict_is_rotation_invariant() {
        let base = cfg(2, "BABabAba", &[0, 0]);
        let expected = classify(&base);
        for r in 0..8 {
            let v = classify(&base.rotated(r));
            assert_eq!(v.boundary_count, expected.boundary_count);
            assert_eq!(v.chi, expected.chi);
            assert_eq!(v.genus, expected.genus);
        }
        let canon = classify(&base.canonical_form());
        assert_eq!(canon.boundary_count, expected.boundary_count);
    }

    #[test]
    fn verdict_serialization_shape() {
        let v = classify(&cfg(2, "abAB", &[0, 0]));
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["boundary_count"], 1);
        assert_eq!(json["chi"], -1);
        assert_eq!(json["genus"], 1);
        assert_eq!(json["isolated"], true);
        assert!(json["cycles"].is_array());
    }
}
