//! Exhaustive enumeration of configurations at bounded size, random
//! sampling, and surveys that tabulate boundary counts and check the
//! parity constraint across the whole search space.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::config::Configuration;
use crate::freegroup::Letter;
use crate::surface::{boundary_components, euler_characteristic};

/// Bounds for the enumeration: per-generator component count, total arc
/// count, or both; plus a guard against runaway search spaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBound {
    pub rank: usize,
    pub max_k: Option<usize>,
    pub max_m: Option<usize>,
    pub ceiling: u128,
}

pub const DEFAULT_CEILING: u128 = 10_000_000;

impl SearchBound {
    pub fn by_max_k(rank: usize, max_k: usize) -> Self {
        assert!(rank >= 2 && max_k >= 1);
        SearchBound {
            rank,
            max_k: Some(max_k),
            max_m: None,
            ceiling: DEFAULT_CEILING,
        }
    }

    pub fn by_max_m(rank: usize, max_m: usize) -> Self {
        assert!(rank >= 2 && max_m >= 2 * rank);
        SearchBound {
            rank,
            max_k: None,
            max_m: Some(max_m),
            ceiling: DEFAULT_CEILING,
        }
    }

    fn admits(&self, ks: &[usize]) -> bool {
        let m: usize = ks.iter().map(|k| 2 * k).sum();
        self.max_k.map_or(true, |b| ks.iter().all(|&k| k <= b))
            && self.max_m.map_or(true, |b| m <= b)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("estimated configuration count {estimate} exceeds the ceiling {ceiling}")]
    CeilingExceeded { estimate: u128, ceiling: u128 },
}

/// All component-count vectors `(k_1, ..., k_n)` within the bound.
fn k_vectors(b: &SearchBound) -> Vec<Vec<usize>> {
    let per_gen_cap = match (b.max_k, b.max_m) {
        (Some(k), Some(m)) => k.min(m / 2),
        (Some(k), None) => k,
        (None, Some(m)) => m / 2,
        (None, None) => panic!("unbounded search"),
    };
    let mut out = Vec::new();
    let mut ks = vec![1usize; b.rank];
    loop {
        if b.admits(&ks) {
            out.push(ks.clone());
        }
        // Mixed-radix increment over [1, per_gen_cap].
        let mut i = 0;
        loop {
            if i == b.rank {
                return out;
            }
            if ks[i] < per_gen_cap {
                ks[i] += 1;
                break;
            }
            ks[i] = 1;
            i += 1;
        }
    }
}

/// Number of distinct arrangements of the letter multiset, times the
/// offset product: an upper bound for the enumeration output (rotation
/// dedup only shrinks it).
pub fn estimate(b: &SearchBound) -> u128 {
    let mut total = 0u128;
    for ks in k_vectors(b) {
        let m: usize = ks.iter().map(|k| 2 * k).sum();
        let mut arrangements = 1u128;
        let mut remaining = m;
        for &k in &ks {
            for _ in 0..2 {
                // Choose the positions of the next letter's k copies.
                let mut choose = 1u128;
                for i in 0..k {
                    choose = choose * (remaining - i) as u128 / (i + 1) as u128;
                }
                arrangements = arrangements.saturating_mul(choose);
                remaining -= k;
            }
        }
        let offsets: u128 = ks.iter().map(|&k| k as u128).product();
        total = total.saturating_add(arrangements.saturating_mul(offsets));
    }
    total
}

fn is_minimal_rotation(word: &[Letter]) -> bool {
    let m = word.len();
    for r in 1..m {
        for i in 0..m {
            match word[(i + r) % m].cmp(&word[i]) {
                std::cmp::Ordering::Less => return false,
                std::cmp::Ordering::Greater => break,
                std::cmp::Ordering::Equal => {}
            }
        }
    }
    true
}

fn next_permutation(word: &mut [Letter]) -> bool {
    let m = word.len();
    if m < 2 {
        return false;
    }
    let Some(i) = (0..m - 1).rev().find(|&i| word[i] < word[i + 1]) else {
        return false;
    };
    let j = (i + 1..m).rev().find(|&j| word[j] > word[i]).unwrap();
    word.swap(i, j);
    word[i + 1..].reverse();
    true
}

fn offset_products(ks: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut os = vec![0usize; ks.len()];
    loop {
        out.push(os.clone());
        let mut i = 0;
        loop {
            if i == ks.len() {
                return out;
            }
            if os[i] + 1 < ks[i] {
                os[i] += 1;
                break;
            }
            os[i] = 0;
            i += 1;
        }
    }
}

/// Every valid configuration within the bound, exactly once up to
/// rotation (each word is its own minimal rotation), in deterministic
/// order.
pub fn enumerate_configs(b: &SearchBound) -> Result<Vec<Configuration>, SearchError> {
    let est = estimate(b);
    if est > b.ceiling {
        return Err(SearchError::CeilingExceeded {
            estimate: est,
            ceiling: b.ceiling,
        });
    }
    let mut out = Vec::new();
    for ks in k_vectors(b) {
        let mut word: Vec<Letter> = Vec::new();
        for (g, &k) in ks.iter().enumerate() {
            for inv in [false, true] {
                word.extend(std::iter::repeat(Letter::new(g, inv)).take(k));
            }
        }
        word.sort();
        let offset_choices = offset_products(&ks);
        loop {
            if is_minimal_rotation(&word) {
                for os in &offset_choices {
                    let offsets: BTreeMap<usize, usize> =
                        os.iter().copied().enumerate().collect();
                    let cfg = Configuration::new(b.rank, word.clone(), offsets)
                        .expect("enumerated data is valid by construction");
                    out.push(cfg);
                }
            }
            if !next_permutation(&mut word) {
                break;
            }
        }
    }
    Ok(out)
}

/// Aggregate classification of everything within the bound.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SurveyReport {
    pub rank: usize,
    /// Configurations after rotation dedup.
    pub total: usize,
    /// boundary_count -> number of configurations.
    pub histogram: BTreeMap<usize, usize>,
    /// Display forms of the configurations with one boundary component.
    pub isolated: Vec<String>,
    /// Configurations whose boundary count has the wrong parity; any
    /// entry here is an implementation defect.
    pub parity_violations: Vec<String>,
}

/// Classify every configuration within the bound, in parallel.
pub fn survey(b: &SearchBound) -> Result<SurveyReport, SearchError> {
    let configs = enumerate_configs(b)?;
    let rows: Vec<(String, usize)> = configs
        .par_iter()
        .map(|cfg| (cfg.to_string(), boundary_components(cfg).len()))
        .collect();

    let mut histogram = BTreeMap::new();
    let mut isolated = Vec::new();
    let mut parity_violations = Vec::new();
    for (cfg, (display, count)) in configs.iter().zip(&rows) {
        *histogram.entry(*count).or_insert(0) += 1;
        if *count == 1 {
            isolated.push(display.clone());
        }
        if count % 2 != (cfg.rank() + 1) % 2 {
            parity_violations.push(display.clone());
        }
        debug_assert!(euler_characteristic(cfg) <= 1 - cfg.rank() as i64);
    }
    Ok(SurveyReport {
        rank: b.rank,
        total: configs.len(),
        histogram,
        isolated,
        parity_violations,
    })
}

/// Deterministic random configurations: uniform component counts in
/// `[1, max_k]`, a shuffled word, uniform offsets.
pub fn sample_configs(rank: usize, max_k: usize, count: usize, seed: u64) -> Vec<Configuration> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let ks: Vec<usize> = (0..rank).map(|_| rng.gen_range(1..=max_k)).collect();
        let mut word = Vec::new();
        for (g, &k) in ks.iter().enumerate() {
            for inv in [false, true] {
                word.extend(std::iter::repeat(Letter::new(g, inv)).take(k));
            }
        }
        word.shuffle(&mut rng);
        let offsets: BTreeMap<usize, usize> =
            ks.iter().enumerate().map(|(g, &k)| (g, rng.gen_range(0..k))).collect();
        out.push(Configuration::new(rank, word, offsets).expect("sampled data is valid"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn smallest_rank_two_space() {
        let configs = enumerate_configs(&SearchBound::by_max_m(2, 4)).unwrap();
        assert_eq!(configs.len(), 6);
        for cfg in &configs {
            assert_eq!(cfg.arc_count(), 4);
            assert_eq!(cfg, &cfg.canonical_form());
        }
    }

    #[test]
    fn rank_three_once_each() {
        let configs = enumerate_configs(&SearchBound::by_max_k(3, 1)).unwrap();
        assert_eq!(configs.len(), 120);
    }

    #[test]
    fn mixed_counts_match_burnside() {
        // k = (2,1) and (1,2) each contribute 30 rotation classes x 2
        // offsets; together with the 6 minimal words, m <= 6 holds 126.
        let configs = enumerate_configs(&SearchBound::by_max_m(2, 6)).unwrap();
        assert_eq!(configs.len(), 6 + 60 + 60);
    }

    #[test]
    fn enumeration_matches_brute_force_for_small_words() {
        // Independent generator: all words over the alphabet, validity
        // filtered, canonicalized, set-deduplicated.
        let alphabet: Vec<Letter> = Letter::alphabet(2).collect();
        let mut brute = BTreeSet::new();
        for m in [4usize, 6] {
            let mut idx = vec![0usize; m];
            loop {
                let word: Vec<Letter> = idx.iter().map(|&i| alphabet[i]).collect();
                let ka = word.iter().filter(|l| l.gen_index() == 0 && !l.is_inverted()).count();
                let kb = word.iter().filter(|l| l.gen_index() == 1 && !l.is_inverted()).count();
                for oa in 0..ka.max(1) {
                    for ob in 0..kb.max(1) {
                        let offsets: BTreeMap<usize, usize> =
                            [(0, oa), (1, ob)].into_iter().collect();
                        if let Ok(cfg) = Configuration::new(2, word.clone(), offsets) {
                            let canon = cfg.canonical_form();
                            brute.insert((canon.word().to_vec(), vec![
                                canon.generator_offset(0),
                                canon.generator_offset(1),
                            ]));
                        }
                    }
                }
                let mut i = 0;
                loop {
                    if i == m {
                        break;
                    }
                    if idx[i] + 1 < alphabet.len() {
                        idx[i] += 1;
                        break;
                    }
                    idx[i] = 0;
                    i += 1;
                }
                if i == m {
                    break;
                }
            }
        }
        let enumerated: BTreeSet<_> = enumerate_configs(&SearchBound::by_max_m(2, 6))
            .unwrap()
            .into_iter()
            .map(|c| (c.word().to_vec(), vec![c.generator_offset(0), c.generator_offset(1)]))
            .collect();
        assert_eq!(enumerated, brute);
    }

    #[test]
    fn ceiling_guard_triggers() {
        let mut b = SearchBound::by_max_k(2, 4);
        b.ceiling = 10;
        assert!(matches!(
            enumerate_configs(&b),
            Err(SearchError::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn estimate_dominates_output() {
        for b in [SearchBound::by_max_m(2, 6), SearchBound::by_max_k(3, 1)] {
            let est = estimate(&b);
            let actual = enumerate_configs(&b).unwrap().len() as u128;
            assert!(est >= actual, "estimate {est} < actual {actual}");
        }
    }

    #[test]
    fn rank_two_survey() {
        let report = survey(&SearchBound::by_max_m(2, 4)).unwrap();
        assert_eq!(report.total, 6);
        assert!(report.parity_violations.is_empty());
        assert!(report.histogram.keys().all(|&c| c == 1 || c == 3));
        assert!(report.histogram[&1] >= 1);
        assert!(report.isolated.iter().any(|s| s.starts_with("abAB")));
    }

    #[test]
    fn rank_three_survey_has_no_isolated_orders() {
        let report = survey(&SearchBound::by_max_k(3, 1)).unwrap();
        assert_eq!(report.total, 120);
        assert!(report.isolated.is_empty());
        assert!(report.parity_violations.is_empty());
        assert!(report.histogram.keys().all(|&c| c % 2 == 0));
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        let a = sample_configs(2, 3, 25, 7);
        let b = sample_configs(2, 3, 25, 7);
        assert_eq!(a, b);
        let c = sample_configs(2, 3, 25, 8);
        assert_ne!(a, c);
        for cfg in &a {
            assert!(cfg.arc_count() >= 4 && cfg.arc_count() <= 12);
        }
    }
}
