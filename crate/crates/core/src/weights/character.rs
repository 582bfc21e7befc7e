use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use rayon::prelude::*;

use super::{positive_roots, rho, Partition, Weight, WeightsError};

/// Highest weights with multiplicities.
pub type Decomposition = BTreeMap<Partition, u128>;

/// Largest weight support [`exterior_multiplicity`] will materialise.
pub const DEFAULT_SUPPORT_LIMIT: usize = 5_000_000;

/// A formal ℤ-combination of torus weights of Sp₂ₙ. Zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    n: usize,
    terms: BTreeMap<Weight, i128>,
}

impl Character {
    pub fn zero(n: usize) -> Self {
        Character { n, terms: BTreeMap::new() }
    }

    /// The trivial character.
    pub fn one(n: usize) -> Self {
        Self::monomial(Weight::zero(n), 1)
    }

    pub fn monomial(weight: Weight, coefficient: i128) -> Self {
        let mut c = Self::zero(weight.len());
        c.add_term(weight, coefficient);
        c
    }

    pub fn from_terms(n: usize, terms: impl IntoIterator<Item = (Weight, i128)>) -> Result<Self, WeightsError> {
        let mut c = Self::zero(n);
        for (w, m) in terms {
            w.check_len(n)?;
            c.add_term(w, m);
        }
        Ok(c)
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Weight, i128> {
        &self.terms
    }

    pub fn coefficient(&self, w: &Weight) -> i128 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluation at the identity.
    pub fn dimension(&self) -> i128 {
        self.terms.values().sum()
    }

    fn add_term(&mut self, w: Weight, m: i128) {
        if m == 0 {
            return;
        }
        match self.terms.entry(w) {
            Entry::Vacant(v) => {
                v.insert(m);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += m;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    fn same_rank(&self, other: &Character) {
        assert_eq!(self.n, other.n, "characters of different rank");
    }

    pub fn add(&self, other: &Character) -> Character {
        self.same_rank(other);
        let mut c = self.clone();
        for (w, &m) in &other.terms {
            c.add_term(w.clone(), m);
        }
        c
    }

    pub fn sub(&self, other: &Character) -> Character {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i128) -> Character {
        if k == 0 {
            return Character::zero(self.n);
        }
        Character { n: self.n, terms: self.terms.iter().map(|(w, &m)| (w.clone(), m * k)).collect() }
    }

    /// Product of characters, i.e. the character of the tensor product.
    pub fn tensor(&self, other: &Character) -> Character {
        self.same_rank(other);
        let left: Vec<(&Weight, &i128)> = self.terms.iter().collect();
        let merged = left
            .par_chunks(256.max(left.len() / 64))
            .map(|chunk| {
                let mut acc: HashMap<Weight, i128> = HashMap::new();
                for (a, &ma) in chunk {
                    for (b, &mb) in &other.terms {
                        *acc.entry(a.add(b)).or_insert(0) += ma * mb;
                    }
                }
                acc
            })
            .reduce(HashMap::new, |mut x, y| {
                for (w, m) in y {
                    *x.entry(w).or_insert(0) += m;
                }
                x
            });
        Character { n: self.n, terms: merged.into_iter().filter(|&(_, m)| m != 0).collect() }
    }

    pub fn pow(&self, k: u32) -> Character {
        (0..k).fold(Character::one(self.n), |acc, _| acc.tensor(self))
    }

    /// Restriction along `Sp₂ₙ₋₂ ⊂ Sp₂ₙ` (the last coordinate forgotten).
    pub fn restrict_last(&self) -> Result<Character, WeightsError> {
        if self.n == 0 {
            return Err(WeightsError::ZeroRank);
        }
        let mut c = Character::zero(self.n - 1);
        for (w, &m) in &self.terms {
            c.add_term(Weight(w.0[..self.n - 1].to_vec()), m);
        }
        Ok(c)
    }

    /// Coefficients at dominant weights only.
    pub fn dominant_part(&self) -> BTreeMap<Weight, i128> {
        self.terms.iter().filter(|(w, _)| w.is_dominant()).map(|(w, &m)| (w.clone(), m)).collect()
    }

    /// Every coefficient equals the one at its dominant representative, and
    /// every orbit meeting the support lies in it entirely.
    pub fn check_invariant(&self) -> Result<(), WeightsError> {
        for (w, &m) in &self.terms {
            if self.coefficient(&w.dominant_rep()) != m {
                return Err(WeightsError::NotInvariant(w.clone()));
            }
        }
        for nu in self.terms.keys().filter(|w| w.is_dominant()) {
            let present = orbit(nu).iter().filter(|w| self.terms.contains_key(w)).count();
            if present != orbit_size(nu) {
                return Err(WeightsError::NotInvariant(nu.clone()));
            }
        }
        Ok(())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (w, &m) in self.terms.iter().rev() {
            let mono: Vec<String> = w
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e != 0)
                .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                .collect();
            let body = if mono.is_empty() { String::from("1") } else { mono.join(" ") };
            let (sign, a) = if m < 0 { ("-", -m) } else { ("+", m) };
            if first {
                write!(f, "{}", if m < 0 { "-" } else { "" })?;
            } else {
                write!(f, " {sign} ")?;
            }
            if a == 1 {
                write!(f, "{body}")?;
            } else if mono.is_empty() {
                write!(f, "{a}")?;
            } else {
                write!(f, "{a} {body}")?;
            }
            first = false;
        }
        Ok(())
    }
}

/// Dominant weights `ν ≤ λ` in dominance order, sorted from the top down
/// (size, then lexicographic, both descending).
fn dominant_weights_below(lambda: &Weight) -> Vec<Weight> {
    let n = lambda.len();
    let total: i64 = lambda.0.iter().sum();
    let width = lambda.0.first().copied().unwrap_or(0);
    let prefix = |v: &[i64]| -> Vec<i64> {
        v.iter()
            .scan(0, |s, &x| {
                *s += x;
                Some(*s)
            })
            .collect()
    };
    let top = prefix(&lambda.0);
    let mut out = Vec::new();
    let mut size = total;
    while size >= 0 {
        for p in Partition::all_of_size(size as u32) {
            if p.length() > n || i64::from(p.part(0)) > width {
                continue;
            }
            let v = p.to_weight(n).expect("length checked");
            if prefix(&v.0).iter().zip(&top).all(|(a, b)| a <= b) {
                out.push(v);
            }
        }
        size -= 2;
    }
    out.sort_by(|a, b| graded_lex_desc(a, b));
    out
}

fn graded_lex_desc(a: &Weight, b: &Weight) -> std::cmp::Ordering {
    let sa: i64 = a.0.iter().sum();
    let sb: i64 = b.0.iter().sum();
    sb.cmp(&sa).then_with(|| b.0.cmp(&a.0))
}

/// Dominant weight multiplicities of `V(λ)` by Freudenthal's recursion.
pub(crate) fn dominant_multiplicities(lambda: &Weight) -> Vec<(Weight, i128)> {
    let n = lambda.len();
    if n == 0 {
        return vec![(Weight::zero(0), 1)];
    }
    let r = rho(n).expect("n ≥ 1");
    let roots = positive_roots(n);
    let bound = lambda.0.first().copied().unwrap_or(0);
    let lr = lambda.add(&r);
    let norm_top = lr.dot(&lr);
    let mut mult: HashMap<Weight, i128> = HashMap::new();
    let mut out = Vec::new();
    for nu in dominant_weights_below(lambda) {
        let m = if &nu == lambda {
            1
        } else {
            let mut num: i128 = 0;
            for a in &roots {
                let mut x = nu.add(a);
                while x.0.iter().all(|c| c.abs() <= bound) {
                    let mx = mult.get(&x.dominant_rep()).copied().unwrap_or(0);
                    num += 2 * i128::from(x.dot(a)) * mx;
                    x = x.add(a);
                }
            }
            let nr = nu.add(&r);
            let den = i128::from(norm_top - nr.dot(&nr));
            debug_assert!(den > 0 && num % den == 0, "Freudenthal division at {nu}");
            num / den
        };
        mult.insert(nu.clone(), m);
        if m != 0 {
            out.push((nu, m));
        }
    }
    out
}

/// Distinct signed rearrangements of a dominant weight.
fn orbit(nu: &Weight) -> Vec<Weight> {
    let mut perm = nu.0.clone();
    perm.sort_unstable();
    let mut perms = Vec::new();
    loop {
        perms.push(perm.clone());
        // Next lexicographic permutation of the multiset.
        let Some(i) = (0..perm.len().saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..perm.len()).rev().find(|&j| perm[j] > perm[i]).expect("exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    let mut out = Vec::new();
    for p in perms {
        let nz: Vec<usize> = (0..p.len()).filter(|&i| p[i] != 0).collect();
        for mask in 0u64..(1 << nz.len()) {
            let mut q = p.clone();
            for (b, &i) in nz.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    q[i] = -q[i];
                }
            }
            out.push(Weight(q));
        }
    }
    out
}

fn orbit_size(nu: &Weight) -> usize {
    let n = nu.len();
    let mut size: usize = (1..=n).product::<usize>() << nu.0.iter().filter(|&&x| x != 0).count();
    let mut i = 0;
    while i < n {
        let j = (i..n).find(|&j| nu.0[j] != nu.0[i]).unwrap_or(n);
        size /= (1..=j - i).product::<usize>();
        i = j;
    }
    size
}

/// The irreducible character of Sp₂ₙ with highest weight `λ`.
pub fn sp_character(lambda: &Partition, n: usize) -> Result<Character, WeightsError> {
    let top = lambda.to_weight(n)?;
    let mut c = Character::zero(n);
    for (nu, m) in dominant_multiplicities(&top) {
        for w in orbit(&nu) {
            c.terms.insert(w, m);
        }
    }
    Ok(c)
}

/// Weyl dimension formula for Cₙ; zero when `l(λ) > n`.
pub fn weyl_dim_sp(lambda: &Partition, n: usize) -> BigUint {
    let Ok(l) = lambda.to_weight(n) else {
        return BigUint::from(0u32);
    };
    if n == 0 {
        return BigUint::one();
    }
    let r = rho(n).expect("n ≥ 1");
    let lr = l.add(&r);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for a in positive_roots(n) {
        num *= BigUint::from(lr.dot(&a) as u64);
        den *= BigUint::from(r.dot(&a) as u64);
    }
    num / den
}

/// Greedy highest-weight subtraction of irreducible characters.
pub fn decompose(chi: &Character) -> Result<Decomposition, WeightsError> {
    chi.check_invariant()?;
    let n = chi.rank();
    let mut rem = chi.dominant_part();
    let mut out = Decomposition::new();
    while let Some(top) = rem.keys().min_by(|a, b| graded_lex_desc(a, b)).cloned() {
        let m = rem[&top];
        if m < 0 {
            return Err(WeightsError::NotACharacter { weight: top, multiplicity: m });
        }
        for (nu, k) in dominant_multiplicities(&top) {
            let e = rem.entry(nu.clone()).or_insert(0);
            *e -= m * k;
            if *e == 0 {
                rem.remove(&nu);
            }
        }
        out.insert(top.to_partition().expect("dominant"), m as u128);
    }
    debug_assert!(out.keys().all(|p| p.length() <= n));
    Ok(out)
}

/// Multiplicity of the trivial representation in `V^{⊗2s}` for Sp₂ₙ.
pub fn invariant_dimension_tensor(n: usize, s: u32) -> Result<u128, WeightsError> {
    if n == 0 || s == 0 {
        return Err(WeightsError::ZeroRank);
    }
    let v = sp_character(&Partition::new(vec![1]).expect("valid"), n)?;
    let d = decompose(&v.pow(2 * s))?;
    Ok(d.get(&Partition::empty()).copied().unwrap_or(0))
}

/// Character of the full exterior algebra `∧V = Π_i (x_i⁻¹ + 2 + x_i)`.
pub fn exterior_algebra_character(g: usize) -> Character {
    let mut c = Character::one(g);
    for i in 0..g {
        let mut factor = Character::zero(g);
        for (e, m) in [(-1, 1), (0, 2), (1, 1)] {
            let mut w = Weight::zero(g);
            w.0[i] = e;
            factor.add_term(w, m);
        }
        c = c.tensor(&factor);
    }
    c
}

/// Multiplicity of `V_λ` in `(∧V)^{⊗r}` for Sp₂g.
pub fn exterior_multiplicity(lambda: &Partition, g: usize, r: u32) -> Result<u128, WeightsError> {
    exterior_multiplicity_with_limit(lambda, g, r, DEFAULT_SUPPORT_LIMIT)
}

pub fn exterior_multiplicity_with_limit(
    lambda: &Partition,
    g: usize,
    r: u32,
    limit: usize,
) -> Result<u128, WeightsError> {
    lambda.to_weight(g)?;
    let support = (2 * r as usize + 1).checked_pow(g as u32).unwrap_or(usize::MAX);
    if support > limit {
        return Err(WeightsError::BudgetExceeded { support, limit });
    }
    let chi = exterior_algebra_character(g).pow(r);
    Ok(decompose(&chi)?.get(lambda).copied().unwrap_or(0))
}
