//! Seeded experiments on the action of Burau images on tuples of vectors.

use std::collections::{HashMap, VecDeque};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::burau::{burau_generator, burau_matrix, BraidWord, BurauError, Letter};
use crate::complexes::{orbit_conditions, ComplexError, OrbitKind, OrbitReport};
use crate::lattice::{classify_element, distinguished_vector, IntMatrix, IntVector, Level};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrbitError {
    #[error("{kind:?} tuples of size {size} are out of range for n = {n}")]
    SizeBound { kind: OrbitKind, size: usize, n: usize },
    #[error("vector of length {found} in rank {expected}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("target fails the orbit conditions: {0:?}")]
    TargetRejected(OrbitReport),
    #[error("mean word length must be finite and nonnegative")]
    BadMeanLength,
    #[error(transparent)]
    Burau(#[from] BurauError),
}

impl From<ComplexError> for OrbitError {
    fn from(e: ComplexError) -> Self {
        match e {
            ComplexError::SizeBound { kind, size, n } => OrbitError::SizeBound { kind, size, n },
            ComplexError::DimensionMismatch { expected, found } => OrbitError::DimensionMismatch { expected, found },
            other => unreachable!("orbit conditions only fail on sizes: {other}"),
        }
    }
}

/// Random braid words with geometrically distributed length.
///
/// Trial `t` draws from its own ChaCha stream, so results do not depend on
/// scheduling or on which other trials are run.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WordSampler {
    pub n: usize,
    pub mean_length: f64,
    pub seed: u64,
}

impl WordSampler {
    pub fn new(n: usize, mean_length: f64, seed: u64) -> Result<Self, OrbitError> {
        if n == 0 {
            return Err(BurauError::ZeroStrands.into());
        }
        if !mean_length.is_finite() || mean_length < 0.0 {
            return Err(OrbitError::BadMeanLength);
        }
        Ok(WordSampler { n, mean_length, seed })
    }

    pub fn rng(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }

    pub fn word(&self, trial: u64) -> BraidWord {
        let mut rng = self.rng(trial);
        let mut word = BraidWord::empty(self.n).expect("n ≥ 1");
        if self.n < 2 {
            return word;
        }
        let keep = self.mean_length / (self.mean_length + 1.0);
        while rng.gen_bool(keep) {
            let index = rng.gen_range(1..self.n);
            word.push(Letter { index, inverse: rng.gen_bool(0.5) });
        }
        word
    }
}

/// `(e_{n−p}, …, e_n)` for X, `{e_1 − e_2, …, e_{2p+1} − e_{2p+2}}` for IX;
/// `p + 1` vectors either way.
pub fn standard_tuple(kind: OrbitKind, n: usize, p: usize) -> Result<Vec<IntVector>, OrbitError> {
    let size = p + 1;
    let fits = match kind {
        OrbitKind::X => size < n,
        OrbitKind::IX => 2 * size < n,
    };
    if !fits {
        return Err(OrbitError::SizeBound { kind, size, n });
    }
    Ok(match kind {
        OrbitKind::X => (n - p..=n).map(|i| IntVector::basis(n, i)).collect(),
        OrbitKind::IX => {
            (0..size).map(|k| &IntVector::basis(n, 2 * k + 1) - &IntVector::basis(n, 2 * k + 2)).collect()
        }
    })
}

fn apply_all(m: &IntMatrix, tuple: &[IntVector]) -> Vec<IntVector> {
    tuple.iter().map(|u| m.apply(u).expect("ranks agree")).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct NecessityConfig {
    pub kind: OrbitKind,
    pub n: usize,
    /// Simplex dimension; the tuple has `p + 1` vectors.
    pub p: usize,
    pub trials: u64,
    pub seed: u64,
    pub mean_length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub trial: u64,
    pub word: Vec<i64>,
    pub image: Vec<IntVector>,
    pub report: OrbitReport,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NecessityReport {
    pub config: NecessityConfig,
    pub passed: bool,
    pub failures: u64,
    pub longest_word: usize,
    pub counterexample: Option<Counterexample>,
}

/// Applies random Burau images to the standard tuple and checks that every
/// image still satisfies the orbit conditions.
pub fn necessity_experiment(config: &NecessityConfig) -> Result<NecessityReport, OrbitError> {
    let std = standard_tuple(config.kind, config.n, config.p)?;
    let sampler = WordSampler::new(config.n, config.mean_length, config.seed)?;
    let outcomes: Vec<(usize, Option<Counterexample>)> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let word = sampler.word(trial);
            let image = apply_all(&burau_matrix(&word), &std);
            let report = orbit_conditions(config.kind, config.n, &image).expect("sizes validated");
            let bad = (!report.holds()).then(|| Counterexample { trial, word: word.signed(), image, report });
            (word.len(), bad)
        })
        .collect();
    let longest_word = outcomes.iter().map(|(l, _)| *l).max().unwrap_or(0);
    let failures = outcomes.iter().filter(|(_, c)| c.is_some()).count() as u64;
    let counterexample = outcomes.into_iter().find_map(|(_, c)| c);
    Ok(NecessityReport { config: *config, passed: failures == 0, failures, longest_word, counterexample })
}

/// Per-word checks that a Burau image lies in `Q_n`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ImageReport {
    pub n: usize,
    pub trials: u64,
    pub seed: u64,
    pub failures: u64,
    /// First failing word with the checks it failed.
    pub first_failure: Option<(Vec<i64>, Vec<String>)>,
}

/// Form, `φ`, `v_n` and the mod 2 permutation, checked on random words.
pub fn image_experiment(n: usize, trials: u64, seed: u64, mean_length: f64) -> Result<ImageReport, OrbitError> {
    let sampler = WordSampler::new(n, mean_length, seed)?;
    let vn = distinguished_vector(n).expect("n ≥ 1");
    let fails: Vec<Option<(Vec<i64>, Vec<String>)>> = (0..trials)
        .into_par_iter()
        .map(|trial| {
            let word = sampler.word(trial);
            let m = burau_matrix(&word);
            let mut failed = Vec::new();
            match classify_element(&m) {
                Ok(c) if c.level().is_some_and(|l| l >= Level::Q) => {}
                Ok(c) => failed.push(format!("classified as {c}")),
                Err(e) => failed.push(e.to_string()),
            }
            if m.apply(&vn).expect("rank n") != vn {
                failed.push("moves v_n".into());
            }
            if m.mod2() != word.permutation_matrix() {
                failed.push("mod 2 reduction differs from the permutation matrix".into());
            }
            (!failed.is_empty()).then(|| (word.signed(), failed))
        })
        .collect();
    let failures = fails.iter().filter(|f| f.is_some()).count() as u64;
    Ok(ImageReport { n, trials, seed, failures, first_failure: fails.into_iter().flatten().next() })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReachabilityResult {
    pub kind: OrbitKind,
    pub n: usize,
    pub target: Vec<IntVector>,
    pub found: bool,
    /// Signed generator indices; its Burau matrix maps the standard tuple onto the target.
    pub witness: Option<Vec<i64>>,
    pub depth: Option<usize>,
    pub max_depth: usize,
    pub states_explored: usize,
}

fn normalise(kind: OrbitKind, mut tuple: Vec<IntVector>) -> Vec<IntVector> {
    // IX simplices are unordered sets.
    if kind == OrbitKind::IX {
        tuple.sort_by(|a, b| a.entries().cmp(b.entries()));
    }
    tuple
}

/// Breadth-first search over words of length at most `max_depth` for one whose
/// Burau image carries the standard tuple to `target`. Never asserts non-membership.
pub fn reachability_search(
    kind: OrbitKind,
    n: usize,
    target: &[IntVector],
    max_depth: usize,
) -> Result<ReachabilityResult, OrbitError> {
    let report = orbit_conditions(kind, n, target)?;
    if !report.holds() {
        return Err(OrbitError::TargetRejected(report));
    }
    if target.is_empty() {
        return Err(OrbitError::SizeBound { kind, size: 0, n });
    }
    let start = standard_tuple(kind, n, target.len() - 1)?;
    let goal = normalise(kind, target.to_vec());
    let gens: Vec<(i64, IntMatrix)> = (1..n)
        .flat_map(|i| [(i as i64, false), (-(i as i64), true)])
        .map(|(s, inv)| (s, burau_generator(n, s.unsigned_abs() as usize, inv).expect("in range").into_matrix()))
        .collect();

    // parent[state] = (previous state, generator applied last, i.e. leftmost in the word)
    let mut parent: HashMap<Vec<IntVector>, Option<(Vec<IntVector>, i64)>> = HashMap::new();
    let start_key = normalise(kind, start.clone());
    parent.insert(start_key.clone(), None);
    let mut queue = VecDeque::from([(start, start_key, 0usize)]);
    let mut hit: Option<(Vec<IntVector>, usize)> = None;
    while let Some((state, key, depth)) = queue.pop_front() {
        if key == goal {
            hit = Some((key, depth));
            break;
        }
        if depth == max_depth {
            continue;
        }
        for (s, g) in &gens {
            let next = apply_all(g, &state);
            let nk = normalise(kind, next.clone());
            if !parent.contains_key(&nk) {
                parent.insert(nk.clone(), Some((key.clone(), *s)));
                queue.push_back((next, nk, depth + 1));
            }
        }
    }
    let explored = parent.len();
    let base = ReachabilityResult {
        kind,
        n,
        target: target.to_vec(),
        found: false,
        witness: None,
        depth: None,
        max_depth,
        states_explored: explored,
    };
    let Some((mut key, depth)) = hit else {
        return Ok(base);
    };
    // Walking back from the goal yields the letters left to right.
    let mut word = Vec::with_capacity(depth);
    while let Some(Some((prev, s))) = parent.get(&key) {
        word.push(*s);
        key = prev.clone();
    }
    let w = BraidWord::new(n, &word)?;
    let image = normalise(kind, apply_all(&burau_matrix(&w), &standard_tuple(kind, n, target.len() - 1)?));
    assert_eq!(image, goal, "witness replays onto the target");
    Ok(ReachabilityResult { found: true, witness: Some(word), depth: Some(depth), ..base })
}
