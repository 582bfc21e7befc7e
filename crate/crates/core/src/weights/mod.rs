//! Type C weight combinatorics: partitions, the hyperoctahedral group,
//! Kostant rows for the vector-stabiliser parabolic, Pieri shifts, symplectic
//! characters and exact polynomial fitting.

mod character;
mod fit;
mod kostant;
mod pieri;
mod signed;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use character::{
    decompose, exterior_algebra_character, exterior_multiplicity, exterior_multiplicity_with_limit,
    invariant_dimension_tensor, sp_character, weyl_dim_sp, Character, Decomposition,
    DEFAULT_SUPPORT_LIMIT,
};
pub use fit::{fit_integer_points, fit_polynomial, PolynomialFit, RationalPolynomial};
pub use kostant::{coset_reps_wp, dot_action, kostant_cohomology, trivial_summand_degrees, CosetRep, KostantRow};
pub use pieri::{pieri_shift, sp_shift, ShiftMultiset};
pub use signed::SignedPermutation;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WeightsError {
    #[error("rank must be positive")]
    ZeroRank,
    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("weight {0} is not dominant")]
    NonDominant(Weight),
    #[error("partition {partition} has more than {n} parts")]
    TooLong { partition: Partition, n: usize },
    #[error("not a signed permutation: {0:?}")]
    NotSignedPermutation(Vec<i64>),
    #[error("not a character: weight {weight} would get multiplicity {multiplicity}")]
    NotACharacter { weight: Weight, multiplicity: i128 },
    #[error("character is not Weyl-group invariant at weight {0}")]
    NotInvariant(Weight),
    #[error("weight support {support} exceeds limit {limit}")]
    BudgetExceeded { support: usize, limit: usize },
    #[error("need at least two points, got {0}")]
    TooFewPoints(usize),
    #[error("argument {0} appears twice with different values")]
    DuplicateArgument(String),
    #[error("interpolant has degree {degree}, above the bound {bound}")]
    DegreeBound { degree: usize, bound: usize },
    #[error("cannot parse {0:?}")]
    Parse(String),
}

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Trailing zeros are dropped; anything else must already be weakly decreasing.
    pub fn new(parts: Vec<u32>) -> Result<Self, WeightsError> {
        let mut parts = parts;
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.windows(2).any(|w| w[0] < w[1]) || parts.contains(&0) {
            return Err(WeightsError::Parse(format!("{parts:?}")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn length(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `i`-th part, 0-based, zero past the end.
    pub fn part(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    /// Pads with zeros to a weight of rank `n`.
    pub fn to_weight(&self, n: usize) -> Result<Weight, WeightsError> {
        if self.length() > n {
            return Err(WeightsError::TooLong { partition: self.clone(), n });
        }
        Ok(Weight((0..n).map(|i| i64::from(self.part(i))).collect()))
    }

    /// All partitions of `k`, in reverse lexicographic order.
    pub fn all_of_size(k: u32) -> Vec<Partition> {
        fn rec(rest: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
            if rest == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for p in (1..=rest.min(max)).rev() {
                cur.push(p);
                rec(rest - p, p, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(k, k, &mut Vec::new(), &mut out);
        out
    }

    /// All partitions of size at most `k`.
    pub fn all_up_to(k: u32) -> Vec<Partition> {
        (0..=k).flat_map(Partition::all_of_size).collect()
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = WeightsError;
    fn try_from(v: Vec<u32>) -> Result<Self, Self::Error> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = self.0.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join(","))
    }
}

/// Accepts `2,1`, `(2,1)`, `0`, `∅` or the empty string.
impl FromStr for Partition {
    type Err = WeightsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() || t == "∅" {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|x| x.trim().parse::<u32>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| WeightsError::Parse(s.to_string()))?;
        Partition::new(parts).map_err(|_| WeightsError::Parse(s.to_string()))
    }
}

/// Integer coordinates in the standard ε-basis of the maximal torus of Sp₂ₙ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Weight(pub Vec<i64>);

impl Weight {
    pub fn new(entries: Vec<i64>) -> Self {
        Weight(entries)
    }

    pub fn zero(n: usize) -> Self {
        Weight(vec![0; n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    /// Weakly decreasing and nonnegative.
    pub fn is_dominant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1]) && self.0.last().map_or(true, |&x| x >= 0)
    }

    /// The dominant weight in the Weyl orbit: absolute values sorted descending.
    pub fn dominant_rep(&self) -> Weight {
        let mut v: Vec<i64> = self.0.iter().map(|x| x.abs()).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        Weight(v)
    }

    pub fn to_partition(&self) -> Result<Partition, WeightsError> {
        if !self.is_dominant() {
            return Err(WeightsError::NonDominant(self.clone()));
        }
        Partition::new(self.0.iter().map(|&x| x as u32).collect())
    }

    fn check_len(&self, n: usize) -> Result<(), WeightsError> {
        if self.len() != n {
            return Err(WeightsError::LengthMismatch { expected: n, found: self.len() });
        }
        Ok(())
    }

    pub(crate) fn add(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub(crate) fn sub(&self, other: &Weight) -> Weight {
        Weight(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub(crate) fn dot(&self, other: &Weight) -> i64 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }
}

impl From<Vec<i64>> for Weight {
    fn from(v: Vec<i64>) -> Self {
        Weight(v)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", s.join(","))
    }
}

impl FromStr for Weight {
    type Err = WeightsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Weight(Vec::new()));
        }
        t.split(',')
            .map(|x| x.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map(Weight)
            .map_err(|_| WeightsError::Parse(s.to_string()))
    }
}

/// `ρ = (n, n−1, …, 1)`.
pub fn rho(n: usize) -> Result<Weight, WeightsError> {
    if n == 0 {
        return Err(WeightsError::ZeroRank);
    }
    Ok(Weight((1..=n as i64).rev().collect()))
}

/// Positive roots of Cₙ: `ε_i ∓ ε_j` for `i < j` and `2ε_i`.
pub(crate) fn positive_roots(n: usize) -> Vec<Weight> {
    let mut out = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in i + 1..n {
            let mut a = vec![0; n];
            a[i] = 1;
            a[j] = -1;
            out.push(Weight(a.clone()));
            a[j] = 1;
            out.push(Weight(a));
        }
        let mut a = vec![0; n];
        a[i] = 2;
        out.push(Weight(a));
    }
    out
}
