//! Exact piecewise-linear realizations of configurations, ping-pong
//! verification for arbitrary actions, configuration extraction, and
//! the nested interval covers of the minimal set.

use std::collections::BTreeMap;

use clap::ValueEnum;
use num::One;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circle::{
    complement_gaps, frac, parse_rat, rat, rat_to_string, CircleInterval, Rat, RatParseError,
};
use crate::config::{ArcId, Configuration, GapId, Violation};
use crate::freegroup::{Letter, Word};
use crate::plmap::{PLCircleMap, PLMapError};

/// Deterministic arc placements. Both put arc `j` inside the sector
/// `[j/m, (j+1)/m)`; the two choices differ so that order-independence
/// across realizations can be tested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Layout {
    /// Arc `j` is the middle third of its sector.
    Standard,
    /// Arc `j` is the middle fifth of its sector.
    Perturbed,
}

fn arc_interval(layout: Layout, j: usize, m: usize) -> CircleInterval {
    let (j, m) = (j as i64, m as i64);
    match layout {
        Layout::Standard => CircleInterval::new(rat(3 * j + 1, 3 * m), rat(3 * j + 2, 3 * m)),
        Layout::Perturbed => CircleInterval::new(rat(5 * j + 2, 5 * m), rat(5 * j + 3, 5 * m)),
    }
}

/// A configuration realized by exact PL circle maps, with one open arc
/// per word position and a certified expansion constant.
#[derive(Debug, Clone)]
pub struct Realization {
    cfg: Configuration,
    arcs: Vec<CircleInterval>,
    gen_maps: Vec<PLCircleMap>,
    inv_maps: Vec<PLCircleMap>,
    mu: Rat,
}

/// Exact image of an open interval under an orientation-preserving map.
pub fn image_of_interval(map: &PLCircleMap, interval: &CircleInterval) -> CircleInterval {
    CircleInterval::new(map.eval(interval.start()), map.eval(interval.end()))
}

fn build_gen_map(cfg: &Configuration, arcs: &[CircleInterval], g: usize) -> PLCircleMap {
    let a = Letter::new(g, false);
    let k = cfg.k(g);
    let o = cfg.letter_offset(a);
    let a_pos = cfg.positions(a);
    let inv_pos = cfg.positions(a.inverse());
    let mut bps = Vec::with_capacity(2 * k);
    for (i, &p) in inv_pos.iter().enumerate() {
        // Arc i of a^{-1} maps onto the gap of D(a) between target arcs
        // (i - 1 + o) and (i + o); the trailing gap maps onto arc (i + o).
        let src = &arcs[p];
        let prev = &arcs[a_pos[(i + k - 1 + o) % k]];
        let next = &arcs[a_pos[(i + o) % k]];
        bps.push((src.start().clone(), prev.end().clone()));
        bps.push((src.end().clone(), next.start().clone()));
    }
    PLCircleMap::new(bps).expect("realized generator map is a homeomorphism")
}

/// Build the deterministic realization of a configuration: arcs in word
/// order, maps affine on each domain arc and each complementary gap.
pub fn realize(cfg: &Configuration, layout: Layout) -> Realization {
    let m = cfg.arc_count();
    let arcs: Vec<CircleInterval> = (0..m).map(|j| arc_interval(layout, j, m)).collect();
    let gen_maps: Vec<PLCircleMap> = (0..cfg.rank())
        .map(|g| build_gen_map(cfg, &arcs, g))
        .collect();
    let inv_maps: Vec<PLCircleMap> = gen_maps.iter().map(PLCircleMap::inverse).collect();

    let mut mu: Option<Rat> = None;
    for s in Letter::alphabet(cfg.rank()) {
        let map = if s.is_inverted() {
            &inv_maps[s.gen_index()]
        } else {
            &gen_maps[s.gen_index()]
        };
        for &p in &cfg.positions(s.inverse()) {
            let slope = image_of_interval(map, &arcs[p]).length() / arcs[p].length();
            mu = Some(match mu {
                Some(best) => best.min(slope),
                None => slope,
            });
        }
    }
    let mu = mu.expect("a valid configuration has at least one arc");
    assert!(mu > Rat::one(), "expansion certificate failed");

    Realization {
        cfg: cfg.clone(),
        arcs,
        gen_maps,
        inv_maps,
        mu,
    }
}

impl Realization {
    pub fn cfg(&self) -> &Configuration {
        &self.cfg
    }

    pub fn arcs(&self) -> &[CircleInterval] {
        &self.arcs
    }

    pub fn arc(&self, arc: ArcId) -> &CircleInterval {
        &self.arcs[arc.0]
    }

    /// Certified lower bound for the slope on every domain arc.
    pub fn mu(&self) -> &Rat {
        &self.mu
    }

    /// The order basepoint: 0, inside the outer gap after the last arc.
    pub fn basepoint(&self) -> Rat {
        Rat::from_integer(0.into())
    }

    pub fn letter_map(&self, s: Letter) -> &PLCircleMap {
        if s.is_inverted() {
            &self.inv_maps[s.gen_index()]
        } else {
            &self.gen_maps[s.gen_index()]
        }
    }

    /// Exact image of a point under the action of a word.
    pub fn apply(&self, w: &Word, x: &Rat) -> Rat {
        assert_eq!(w.rank(), self.cfg.rank(), "rank mismatch");
        let mut y = frac(x);
        for l in w.letters().iter().rev() {
            y = self.letter_map(*l).eval(&y);
        }
        y
    }

    /// The open outer gap between arc `j` and arc `j+1`.
    pub fn outer_gap_interval(&self, gap: GapId) -> CircleInterval {
        let m = self.arcs.len();
        CircleInterval::new(
            self.arcs[gap.0].end().clone(),
            self.arcs[(gap.0 + 1) % m].start().clone(),
        )
    }

    /// The outer gap whose interval contains `x`, if any.
    pub fn gap_containing(&self, x: &Rat) -> Option<GapId> {
        (0..self.arcs.len())
            .map(GapId)
            .find(|&g| self.outer_gap_interval(g).contains(x))
    }

    /// Interval covers of the minimal set: level 0 is the arcs, level
    /// `d+1` collects the images of the level-`d` components under every
    /// letter that does not fix the component's enclosing domain.
    pub fn cover_levels(&self, depth: usize) -> Vec<Vec<CircleInterval>> {
        let mut current: Vec<(Letter, CircleInterval)> = (0..self.arcs.len())
            .map(|j| (self.cfg.letter_at(ArcId(j)), self.arcs[j].clone()))
            .collect();
        let mut levels = vec![current.iter().map(|(_, c)| c.clone()).collect::<Vec<_>>()];
        for _ in 0..depth {
            let mut next = Vec::new();
            for (t, c) in &current {
                for s in Letter::alphabet(self.cfg.rank()) {
                    if s == t.inverse() {
                        continue;
                    }
                    next.push((s, image_of_interval(self.letter_map(s), c)));
                }
            }
            levels.push(next.iter().map(|(_, c)| c.clone()).collect());
            current = next;
        }
        levels
    }

    /// The deepest level of `cover_levels`.
    pub fn minimal_set_cover(&self, depth: usize) -> Vec<CircleInterval> {
        self.cover_levels(depth).pop().unwrap()
    }

    /// The realization as a bare action, forgetting the configuration.
    pub fn to_action(&self) -> CircleAction {
        let mut domains = vec![Vec::new(); 2 * self.cfg.rank()];
        for j in 0..self.arcs.len() {
            domains[letter_slot(self.cfg.letter_at(ArcId(j)))].push(self.arcs[j].clone());
        }
        CircleAction {
            rank: self.cfg.rank(),
            gen_maps: self.gen_maps.clone(),
            domains,
        }
    }
}

/// Index of a letter's domain in a `CircleAction`.
pub fn letter_slot(s: Letter) -> usize {
    2 * s.gen_index() + s.is_inverted() as usize
}

/// A circle action given by generator maps and candidate ping-pong
/// domains, one finite union of open arcs per letter.
#[derive(Debug, Clone)]
pub struct CircleAction {
    pub rank: usize,
    /// One map per generator; inverse letters act by the inverse map.
    pub gen_maps: Vec<PLCircleMap>,
    /// Indexed by `letter_slot`.
    pub domains: Vec<Vec<CircleInterval>>,
}

impl CircleAction {
    pub fn letter_map(&self, s: Letter) -> PLCircleMap {
        let map = &self.gen_maps[s.gen_index()];
        if s.is_inverted() {
            map.inverse()
        } else {
            map.clone()
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PingPongViolation {
    #[error("letter {0} has an empty domain")]
    EmptyDomain(char),
    #[error("domain components {0} of {1} and {2} of {3} have intersecting closures")]
    ClosureOverlap(String, char, String, char),
    #[error("under {letter}, the complement gap {gap} maps to {image}, outside the domain closure")]
    ImageEscapes { letter: char, gap: String, image: String },
}

/// Check the ping-pong conditions exactly: domain components have
/// pairwise disjoint closures, and each letter maps the complement of
/// its inverse's domain into the closure of its own domain.
pub fn verify_pingpong(action: &CircleAction) -> Result<(), Vec<PingPongViolation>> {
    let mut violations = Vec::new();
    let mut all: Vec<(Letter, &CircleInterval)> = Vec::new();
    for s in Letter::alphabet(action.rank) {
        let components = &action.domains[letter_slot(s)];
        if components.is_empty() {
            violations.push(PingPongViolation::EmptyDomain(s.to_char()));
        }
        for c in components {
            all.push((s, c));
        }
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if !all[i].1.closure_disjoint(all[j].1) {
                violations.push(PingPongViolation::ClosureOverlap(
                    all[i].1.to_string(),
                    all[i].0.to_char(),
                    all[j].1.to_string(),
                    all[j].0.to_char(),
                ));
            }
        }
    }
    if !violations.is_empty() {
        return Err(violations);
    }

    for s in Letter::alphabet(action.rank) {
        let map = action.letter_map(s);
        let own = &action.domains[letter_slot(s)];
        for gap in complement_gaps(&action.domains[letter_slot(s.inverse())]) {
            let image = image_of_interval(&map, &gap);
            if !own.iter().any(|c| c.closure_contains_interval(&image)) {
                violations.push(PingPongViolation::ImageEscapes {
                    letter: s.to_char(),
                    gap: gap.to_string(),
                    image: image.to_string(),
                });
            }
        }
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(violations)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExtractError {
    #[error("not a ping-pong action: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    NotPingPong(Vec<PingPongViolation>),
    #[error("normalized domains {0} and {1} have intersecting closures")]
    NormalizationOverlap(String, String),
    #[error("realized matching for generator {0} is not a rotation of the gap indices")]
    InconsistentOffsets(char),
    #[error("extracted data is not a valid configuration: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

/// Read the configuration off an action. Each generator's domain is
/// first normalized to the image of the complement of its inverse's
/// domain, which removes components the dynamics never reaches; the
/// word and offsets are then read from the normalized arcs.
pub fn extract_config(action: &CircleAction) -> Result<Configuration, ExtractError> {
    verify_pingpong(action).map_err(ExtractError::NotPingPong)?;

    let mut normalized: Vec<Vec<CircleInterval>> = vec![Vec::new(); 2 * action.rank];
    for s in Letter::alphabet(action.rank) {
        if s.is_inverted() {
            normalized[letter_slot(s)] = action.domains[letter_slot(s)].clone();
            continue;
        }
        let map = action.letter_map(s);
        let mut arcs: Vec<CircleInterval> =
            complement_gaps(&action.domains[letter_slot(s.inverse())])
                .iter()
                .map(|gap| image_of_interval(&map, gap))
                .collect();
        arcs.sort_by(|x, y| x.start().cmp(y.start()));
        normalized[letter_slot(s)] = arcs;
    }

    let mut all: Vec<(Letter, CircleInterval)> = Vec::new();
    for s in Letter::alphabet(action.rank) {
        for c in &normalized[letter_slot(s)] {
            all.push((s, c.clone()));
        }
    }
    for i in 0..all.len() {
        for j in i + 1..all.len() {
            if !all[i].1.closure_disjoint(&all[j].1) {
                return Err(ExtractError::NormalizationOverlap(
                    all[i].1.to_string(),
                    all[j].1.to_string(),
                ));
            }
        }
    }
    all.sort_by(|x, y| x.1.start().cmp(y.1.start()));
    let word: Vec<Letter> = all.iter().map(|(s, _)| *s).collect();

    let mut offsets = BTreeMap::new();
    for g in 0..action.rank {
        let a = Letter::new(g, false);
        let map = action.letter_map(a);
        let a_arcs = &normalized[letter_slot(a)];
        let inv_arcs = &normalized[letter_slot(a.inverse())];
        let k = inv_arcs.len();
        let mut offset = None;
        for i in 0..k {
            // Gap i of D(a^{-1}) trails occurrence i; its image must be
            // one of the normalized arcs of a.
            let gap = CircleInterval::new(
                inv_arcs[i].end().clone(),
                inv_arcs[(i + 1) % k].start().clone(),
            );
            let image = image_of_interval(&map, &gap);
            let target = a_arcs
                .iter()
                .position(|arc| arc.closure_contains_interval(&image))
                .ok_or(ExtractError::InconsistentOffsets(a.to_char()))?;
            let candidate = (target + k - i) % k;
            match offset {
                None => offset = Some(candidate),
                Some(o) if o == candidate => {}
                Some(_) => return Err(ExtractError::InconsistentOffsets(a.to_char())),
            }
        }
        offsets.insert(g, offset.ok_or(ExtractError::InconsistentOffsets(a.to_char()))?);
    }

    let cfg = Configuration::new(action.rank, word, offsets).map_err(ExtractError::Invalid)?;
    Ok(cfg.canonical_form())
}

/// JSON document form of a `CircleAction`; rationals as `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ActionFile {
    pub generators: BTreeMap<String, GeneratorDoc>,
    pub domains: BTreeMap<String, Vec<[String; 2]>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GeneratorDoc {
    pub breakpoints: Vec<[String; 2]>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ActionFileError {
    #[error("key {0:?} is not a single letter")]
    BadKey(String),
    #[error("generator key {0:?} must be a lowercase letter")]
    NotAGenerator(String),
    #[error("no map given for generator {0}")]
    MissingMap(char),
    #[error("no domain given for letter {0}")]
    MissingDomain(char),
    #[error(transparent)]
    BadRational(#[from] RatParseError),
    #[error("invalid map for generator {0}: {1}")]
    BadMap(char, PLMapError),
}

fn parse_letter_key(key: &str) -> Result<Letter, ActionFileError> {
    let mut chars = key.chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Letter::from_char(c).ok_or_else(|| ActionFileError::BadKey(key.into())),
        _ => Err(ActionFileError::BadKey(key.into())),
    }
}

impl ActionFile {
    pub fn from_action(action: &CircleAction) -> Self {
        let generators = (0..action.rank)
            .map(|g| {
                let breakpoints = action.gen_maps[g]
                    .breakpoints()
                    .iter()
                    .map(|(x, y)| [rat_to_string(x), rat_to_string(y)])
                    .collect();
                (
                    Letter::new(g, false).to_char().to_string(),
                    GeneratorDoc { breakpoints },
                )
            })
            .collect();
        let domains = Letter::alphabet(action.rank)
            .map(|s| {
                let arcs = action.domains[letter_slot(s)]
                    .iter()
                    .map(|c| [rat_to_string(c.start()), rat_to_string(c.end())])
                    .collect();
                (s.to_char().to_string(), arcs)
            })
            .collect();
        ActionFile {
            generators,
            domains,
        }
    }

    pub fn to_action(&self) -> Result<CircleAction, ActionFileError> {
        let mut rank = 0;
        for key in self.generators.keys() {
            let l = parse_letter_key(key)?;
            if l.is_inverted() {
                return Err(ActionFileError::NotAGenerator(key.clone()));
            }
            rank = rank.max(l.gen_index() + 1);
        }
        for key in self.domains.keys() {
            let l = parse_letter_key(key)?;
            rank = rank.max(l.gen_index() + 1);
        }

        let mut gen_maps = Vec::with_capacity(rank);
        for g in 0..rank {
            let c = Letter::new(g, false).to_char();
            let doc = self
                .generators
                .get(&c.to_string())
                .ok_or(ActionFileError::MissingMap(c))?;
            let mut bps = Vec::with_capacity(doc.breakpoints.len());
            for [x, y] in &doc.breakpoints {
                bps.push((parse_rat(x)?, parse_rat(y)?));
            }
            gen_maps.push(PLCircleMap::new(bps).map_err(|e| ActionFileError::BadMap(c, e))?);
        }

        let mut domains = vec![Vec::new(); 2 * rank];
        for s in Letter::alphabet(rank) {
            let c = s.to_char();
            let arcs = self
                .domains
                .get(&c.to_string())
                .ok_or(ActionFileError::MissingDomain(c))?;
            for [x, y] in arcs {
                domains[letter_slot(s)].push(CircleInterval::new(parse_rat(x)?, parse_rat(y)?));
            }
        }

        Ok(CircleAction {
            rank,
            gen_maps,
            domains,
        })
    }
}
