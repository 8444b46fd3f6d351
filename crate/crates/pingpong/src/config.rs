//! The combinatorial model of a ping-pong configuration: a cyclic word
//! listing the domain components counterclockwise, plus one rotation
//! offset per generator encoding how the gaps of `D(a^{-1})` are matched
//! with the components of `D(a)`.
//!
//! Indexing conventions (used consistently across the crate):
//! - occurrences of each letter are numbered in word order from 0;
//! - gap `i` of `D(s)` is the interval whose counterclockwise-left
//!   boundary arc is occurrence `i` of `s`;
//! - the matching sends gap `i` of `D(a^{-1})` to occurrence
//!   `(i + o_a) mod k(a)` of `a`, and the matching for `a^{-1}` is the
//!   one forced by orientation preservation, `o_{a^{-1}} = 1 - o_a`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::freegroup::{Letter, MAX_RANK};

/// Index of an arc, i.e. a position in the cyclic word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArcId(pub usize);

/// Index of the outer gap between arc `j` and arc `j+1` (mod m).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GapId(pub usize);

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Violation {
    #[error("rank {0} is below the minimum of 2")]
    RankTooSmall(usize),
    #[error("rank {0} exceeds the supported maximum of {MAX_RANK}")]
    RankTooLarge(usize),
    #[error("letter {0} references a generator outside rank {1}")]
    LetterOutOfRank(char, usize),
    #[error("k({gen})={k} differs from k({gen_inv})={k_inv}", gen_inv = .gen.to_ascii_uppercase())]
    CountMismatch { gen: char, k: usize, k_inv: usize },
    #[error("generator {0} does not occur in the word")]
    MissingGenerator(char),
    #[error("no offset given for generator {0}")]
    MissingOffset(char),
    #[error("offset {value} for generator {gen} is not in [0, {k})")]
    OffsetOutOfRange { gen: char, value: usize, k: usize },
}

/// A validated ping-pong configuration.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    rank: usize,
    word: Vec<Letter>,
    offsets: Vec<usize>,
}

/// Check the configuration invariants, reporting every violation.
pub fn validate(rank: usize, word: &[Letter], offsets: &BTreeMap<usize, usize>) -> Vec<Violation> {
    let mut violations = Vec::new();
    if rank < 2 {
        violations.push(Violation::RankTooSmall(rank));
    }
    if rank > MAX_RANK {
        violations.push(Violation::RankTooLarge(rank));
        return violations;
    }
    for l in word {
        if l.gen_index() >= rank {
            violations.push(Violation::LetterOutOfRank(l.to_char(), rank));
            return violations;
        }
    }
    let mut counts = vec![[0usize; 2]; rank];
    for l in word {
        counts[l.gen_index()][l.is_inverted() as usize] += 1;
    }
    for g in 0..rank {
        let gen_char = Letter::new(g, false).to_char();
        let (k, k_inv) = (counts[g][0], counts[g][1]);
        if k == 0 && k_inv == 0 {
            violations.push(Violation::MissingGenerator(gen_char));
            continue;
        }
        if k != k_inv {
            violations.push(Violation::CountMismatch {
                gen: gen_char,
                k,
                k_inv,
            });
            continue;
        }
        match offsets.get(&g) {
            None => violations.push(Violation::MissingOffset(gen_char)),
            Some(&o) if o >= k => violations.push(Violation::OffsetOutOfRange {
                gen: gen_char,
                value: o,
                k,
            }),
            Some(_) => {}
        }
    }
    violations
}

impl Configuration {
    pub fn new(
        rank: usize,
        word: Vec<Letter>,
        offsets: BTreeMap<usize, usize>,
    ) -> Result<Self, Vec<Violation>> {
        let violations = validate(rank, &word, &offsets);
        if !violations.is_empty() {
            return Err(violations);
        }
        let offsets = (0..rank).map(|g| offsets[&g]).collect();
        Ok(Configuration {
            rank,
            word,
            offsets,
        })
    }

    /// Convenience constructor from the ASCII word form.
    pub fn parse(rank: usize, word: &str, offsets: &[usize]) -> Result<Self, Vec<Violation>> {
        let letters: Vec<Letter> = word
            .chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| Letter::from_char(c).expect("word letters must be ASCII letters"))
            .collect();
        let map = offsets.iter().copied().enumerate().collect();
        Configuration::new(rank, letters, map)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    /// Total number of arcs `m`.
    pub fn arc_count(&self) -> usize {
        self.word.len()
    }

    pub fn letter_at(&self, arc: ArcId) -> Letter {
        self.word[arc.0]
    }

    /// Number of components of `D(a)` for generator index `g`.
    pub fn k(&self, g: usize) -> usize {
        self.word
            .iter()
            .filter(|l| l.gen_index() == g && !l.is_inverted())
            .count()
    }

    /// Offset of a generator as given; for an inverse letter, the
    /// matching forced by orientation preservation.
    pub fn letter_offset(&self, s: Letter) -> usize {
        let k = self.k(s.gen_index());
        let o = self.offsets[s.gen_index()];
        if s.is_inverted() {
            (k + 1 - o) % k
        } else {
            o
        }
    }

    pub fn generator_offset(&self, g: usize) -> usize {
        self.offsets[g]
    }

    /// Word positions of the occurrences of `s`, in occurrence order.
    pub fn positions(&self, s: Letter) -> Vec<usize> {
        (0..self.word.len())
            .filter(|&p| self.word[p] == s)
            .collect()
    }

    /// Occurrence index of the letter at `position` among equal letters.
    pub fn occurrence_index(&self, position: usize) -> usize {
        let s = self.word[position];
        self.word[..position].iter().filter(|&&l| l == s).count()
    }

    /// Under the action of `s`, gap `i` of `D(s^{-1})` lands on this
    /// occurrence of `s`.
    pub fn gap_target_occurrence(&self, s: Letter, gap: usize) -> usize {
        let k = self.k(s.gen_index());
        (gap + self.letter_offset(s)) % k
    }

    /// The occurrence of `s^{-1}` whose trailing `D(s^{-1})`-gap
    /// contains word position `p` (which must not carry `s^{-1}`).
    pub fn enclosing_gap(&self, s: Letter, p: usize) -> usize {
        let inv = s.inverse();
        assert_ne!(self.word[p], inv);
        let qs = self.positions(inv);
        // Last occurrence position strictly before p, cyclically.
        match qs.iter().rposition(|&q| q < p) {
            Some(i) => i,
            None => qs.len() - 1,
        }
    }

    /// True iff occurrences of `a` and `a^{-1}` strictly alternate in
    /// the cyclic word.
    pub fn is_alternating(&self, g: usize) -> bool {
        let restricted: Vec<bool> = self
            .word
            .iter()
            .filter(|l| l.gen_index() == g)
            .map(|l| l.is_inverted())
            .collect();
        restricted
            .iter()
            .zip(restricted.iter().cycle().skip(1))
            .all(|(cur, next)| cur != next)
    }

    /// The word rotated so that old position `r` becomes position 0,
    /// with offsets re-indexed to keep the same matching.
    pub fn rotated(&self, r: usize) -> Configuration {
        let m = self.word.len();
        let r = r % m;
        let word: Vec<Letter> = (0..m).map(|i| self.word[(i + r) % m]).collect();
        let offsets = (0..self.rank)
            .map(|g| {
                let k = self.k(g);
                let before = |s: Letter| {
                    self.word[..r].iter().filter(|&&l| l == s).count()
                };
                let c_gen = before(Letter::new(g, false));
                let c_inv = before(Letter::new(g, true));
                ((self.offsets[g] + k + c_inv) - c_gen) % k
            })
            .collect();
        Configuration {
            rank: self.rank,
            word,
            offsets,
        }
    }

    /// Rotation-minimal representative (lexicographic over the letter
    /// ordering `a < A < b < B < ...`).
    pub fn canonical_form(&self) -> Configuration {
        let m = self.word.len();
        let mut best = 0;
        for r in 1..m {
            for i in 0..m {
                let cand = self.word[(i + r) % m];
                let cur = self.word[(i + best) % m];
                match cand.cmp(&cur) {
                    std::cmp::Ordering::Less => {
                        best = r;
                        break;
                    }
                    std::cmp::Ordering::Greater => break,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        self.rotated(best)
    }

    pub fn word_string(&self) -> String {
        self.word.iter().map(Letter::to_char).collect()
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [", self.word_string())?;
        for g in 0..self.rank {
            if g > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", Letter::new(g, false).to_char(), self.offsets[g])?;
        }
        write!(f, "]")
    }
}

/// The alternating cycle on the components of `D(a)` and `D(a^{-1})`:
/// from each arc, follow the image of its trailing gap under the
/// inverse letter. Always a single cycle of length `2 k(a)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArcCycle {
    pub gen: usize,
    /// Arc ids in cycle order, alternating between `a`- and
    /// `a^{-1}`-arcs, starting at occurrence 0 of `a`.
    pub vertices: Vec<ArcId>,
}

/// Successor of an arc of `s` in the cycle of its generator: the arc of
/// `s^{-1}` onto whose closure the trailing `D(s)`-gap maps under
/// `s^{-1}`.
pub fn cycle_successor(cfg: &Configuration, arc: ArcId) -> ArcId {
    let s = cfg.letter_at(arc);
    let i = cfg.occurrence_index(arc.0);
    let inv = s.inverse();
    // Gap i of D(s) maps under s^{-1} onto occurrence (i + o_{s^{-1}}) of s^{-1}.
    let target = cfg.gap_target_occurrence(inv, i);
    ArcId(cfg.positions(inv)[target])
}

/// Build the cycle for generator `g` and verify it is a single
/// alternating `2k`-cycle covering every component.
pub fn arc_cycle(cfg: &Configuration, g: usize) -> ArcCycle {
    let k = cfg.k(g);
    let start = ArcId(cfg.positions(Letter::new(g, false))[0]);
    let mut vertices = Vec::with_capacity(2 * k);
    let mut cur = start;
    for step in 0..2 * k {
        assert_eq!(
            cfg.letter_at(cur).is_inverted(),
            step % 2 == 1,
            "cycle must alternate between components of the two domains"
        );
        vertices.push(cur);
        cur = cycle_successor(cfg, cur);
    }
    assert_eq!(cur, start, "cycle must close after 2k steps");
    let mut seen: Vec<ArcId> = vertices.clone();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), 2 * k, "cycle must visit every component once");
    ArcCycle { gen: g, vertices }
}

/// For each arc `J` of a domain other than `D(s^{-1})`, the arc of
/// `D(s)` that contains the image of `J` under `s`.
pub fn component_assignments(cfg: &Configuration, s: Letter) -> Vec<(ArcId, ArcId)> {
    let inv = s.inverse();
    let targets = cfg.positions(s);
    (0..cfg.arc_count())
        .filter(|&p| cfg.word[p] != inv)
        .map(|p| {
            let gap = cfg.enclosing_gap(s, p);
            let occ = cfg.gap_target_occurrence(s, gap);
            (ArcId(p), ArcId(targets[occ]))
        })
        .collect()
}

/// JSON document form of a configuration.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConfigDoc {
    pub rank: usize,
    pub word: Vec<String>,
    pub offsets: BTreeMap<String, usize>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConfigDocError {
    #[error("word entry {0:?} is not a single ASCII letter")]
    BadWordEntry(String),
    #[error("offset key {0:?} is not a single lowercase generator letter")]
    BadOffsetKey(String),
    #[error("invalid configuration: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl ConfigDoc {
    pub fn from_config(cfg: &Configuration) -> Self {
        let word = cfg.word().iter().map(|l| l.to_char().to_string()).collect();
        let offsets = (0..cfg.rank())
            .map(|g| {
                (
                    Letter::new(g, false).to_char().to_string(),
                    cfg.generator_offset(g),
                )
            })
            .collect();
        ConfigDoc {
            rank: cfg.rank(),
            word,
            offsets,
        }
    }

    pub fn to_config(&self) -> Result<Configuration, ConfigDocError> {
        let mut word = Vec::with_capacity(self.word.len());
        for entry in &self.word {
            let mut chars = entry.chars();
            let (c, rest) = (chars.next(), chars.next());
            let letter = match (c, rest) {
                (Some(c), None) => Letter::from_char(c),
                _ => None,
            };
            word.push(letter.ok_or_else(|| ConfigDocError::BadWordEntry(entry.clone()))?);
        }
        let mut offsets = BTreeMap::new();
        for (key, &value) in &self.offsets {
            let mut chars = key.chars();
            let letter = match (chars.next(), chars.next()) {
                (Some(c), None) => Letter::from_char(c).filter(|l| !l.is_inverted()),
                _ => None,
            };
            let letter = letter.ok_or_else(|| ConfigDocError::BadOffsetKey(key.clone()))?;
            offsets.insert(letter.gen_index(), value);
        }
        Configuration::new(self.rank, word, offsets).map_err(ConfigDocError::Invalid)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn schottky() -> Configuration {
        Configuration::parse(2, "abAB", &[0, 0]).unwrap()
    }

    pub(crate) fn exotic() -> Configuration {
        Configuration::parse(2, "BABabAba", &[0, 0]).unwrap()
    }

    #[test]
    fn schottky_is_valid() {
        assert!(Configuration::parse(2, "abAB", &[0, 0]).is_ok());
    }

    #[test]
    fn count_mismatch_reported() {
        let err = Configuration::parse(2, "aabB", &[0, 0]).unwrap_err();
        assert!(err.contains(&Violation::CountMismatch {
            gen: 'a',
            k: 2,
            k_inv: 0
        }));
    }

    #[test]
    fn exotic_word_is_valid_for_all_offsets() {
        for oa in 0..2 {
            for ob in 0..2 {
                assert!(Configuration::parse(2, "BABabAba", &[oa, ob]).is_ok());
            }
        }
    }

    #[test]
    fn offset_out_of_range_rejected() {
        let err = Configuration::parse(2, "abAB", &[1, 0]).unwrap_err();
        assert_eq!(
            err,
            vec![Violation::OffsetOutOfRange {
                gen: 'a',
                value: 1,
                k: 1
            }]
        );
    }

    #[test]
    fn missing_generator_rejected() {
        let err = Configuration::parse(3, "abAB", &[0, 0, 0]).unwrap_err();
        assert_eq!(err, vec![Violation::MissingGenerator('c')]);
    }

    #[test]
    fn degenerate_rank_rejected() {
        let err = Configuration::parse(1, "aA", &[0]).unwrap_err();
        assert_eq!(err, vec![Violation::RankTooSmall(1)]);
    }

    #[test]
    fn schottky_cycle_is_a_2_cycle() {
        let cfg = schottky();
        let cyc = arc_cycle(&cfg, 0);
        assert_eq!(cyc.vertices, vec![ArcId(0), ArcId(2)]);
    }

    #[test]
    fn exotic_cycles_have_length_four() {
        let cfg = exotic();
        assert_eq!(arc_cycle(&cfg, 0).vertices.len(), 4);
        let cyc_b = arc_cycle(&cfg, 1);
        assert_eq!(cyc_b.vertices.len(), 4);
        // b-arcs at positions 4 and 6, B-arcs at 0 and 2.
        assert_eq!(cyc_b.vertices, vec![ArcId(4), ArcId(2), ArcId(6), ArcId(0)]);
    }

    #[test]
    fn cycle_length_is_twice_k() {
        for oa in 0..2 {
            for ob in 0..2 {
                let cfg = Configuration::parse(2, "BABabAba", &[oa, ob]).unwrap();
                for g in 0..2 {
                    assert_eq!(arc_cycle(&cfg, g).vertices.len(), 2 * cfg.k(g));
                }
            }
        }
    }

    #[test]
    fn alternation_predicate() {
        let cfg = schottky();
        assert!(cfg.is_alternating(0));
        assert!(cfg.is_alternating(1));
        let cfg = exotic();
        // Restriction to b reads B, B, b, b: not alternating.
        assert!(!cfg.is_alternating(1));
        // Restriction to a reads A, a, A, a: alternating.
        assert!(cfg.is_alternating(0));
    }

    #[test]
    fn schottky_assignments_are_constant() {
        let cfg = schottky();
        let a = Letter::from_char('a').unwrap();
        let assignments = component_assignments(&cfg, a);
        // All arcs except the A-arc map into the unique a-arc.
        assert_eq!(assignments.len(), 3);
        for (_, target) in assignments {
            assert_eq!(target, ArcId(0));
        }
    }

    #[test]
    fn assignments_target_the_right_letter() {
        let cfg = exotic();
        for s in Letter::alphabet(2) {
            for (_, target) in component_assignments(&cfg, s) {
                assert_eq!(cfg.letter_at(target), s);
            }
        }
    }

    #[test]
    fn canonical_form_of_rotated_schottky() {
        let cfg = Configuration::parse(2, "bABa", &[0, 0]).unwrap();
        assert_eq!(cfg.canonical_form().word_string(), "abAB");
    }

    #[test]
    fn rotation_preserves_the_matching() {
        // Rotating must re-index offsets so cycles look the same.
        let cfg = exotic();
        for r in 0..8 {
            let rot = cfg.rotated(r);
            for g in 0..2 {
                let orig = arc_cycle(&cfg, g);
                let rotated = arc_cycle(&rot, g);
                // Map rotated positions back and compare cycles as
                // cyclic sequences anchored at the same arc.
                let m = cfg.arc_count();
                let back: Vec<ArcId> = rotated
                    .vertices
                    .iter()
                    .map(|a| ArcId((a.0 + r) % m))
                    .collect();
                let anchor = back.iter().position(|&a| a == orig.vertices[0]).unwrap();
                let realigned: Vec<ArcId> = (0..back.len())
                    .map(|i| back[(anchor + i) % back.len()])
                    .collect();
                assert_eq!(realigned, orig.vertices, "r={r} g={g}");
            }
        }
    }

    #[test]
    fn json_round_trip() {
        let cfg = exotic();
        let doc = ConfigDoc::from_config(&cfg);
        let text = serde_json::to_string(&doc).unwrap();
        let parsed: ConfigDoc = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_config().unwrap(), cfg);
    }

    proptest! {
        #[test]
        fn canonical_form_is_idempotent(r in 0usize..8, oa in 0usize..2, ob in 0usize..2) {
            let cfg = Configuration::parse(2, "BABabAba", &[oa, ob]).unwrap().rotated(r);
            let canon = cfg.canonical_form();
            prop_assert_eq!(canon.canonical_form(), canon);
        }
    }
}
