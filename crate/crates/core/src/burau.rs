//! Braid words and their integral Burau matrices (the `t = −1` specialisation).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{
    braiding, restrict_to_kernel, BraidingConvention, GroupElement, IntMatrix, Level,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurauError {
    #[error("generator index {index} out of range for {strands} strands (expected 1..={max})", max = strands.saturating_sub(1))]
    IndexOutOfRange { index: i64, strands: usize },
    #[error("braid words need at least one strand")]
    ZeroStrands,
    #[error("cannot parse braid letter {0:?}")]
    Parse(String),
    #[error("words on {0} and {1} strands cannot be multiplied")]
    StrandMismatch(usize, usize),
}

/// `σ_i^{±1}`, with `index` 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Letter {
    pub index: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn signed(&self) -> i64 {
        if self.inverse {
            -(self.index as i64)
        } else {
            self.index as i64
        }
    }

    pub fn inverted(&self) -> Letter {
        Letter { index: self.index, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidWord {
    strands: usize,
    letters: Vec<Letter>,
}

impl BraidWord {
    pub fn new(strands: usize, signed: &[i64]) -> Result<Self, BurauError> {
        if strands == 0 {
            return Err(BurauError::ZeroStrands);
        }
        let letters = signed
            .iter()
            .map(|&s| {
                let index = s.unsigned_abs() as usize;
                if s == 0 || index >= strands {
                    Err(BurauError::IndexOutOfRange { index: s, strands })
                } else {
                    Ok(Letter { index, inverse: s < 0 })
                }
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BraidWord { strands, letters })
    }

    pub fn empty(strands: usize) -> Result<Self, BurauError> {
        Self::new(strands, &[])
    }

    /// Parses comma-separated signed generator indices, e.g. `"1,2,-1"`.
    pub fn parse(strands: usize, text: &str) -> Result<Self, BurauError> {
        let text = text.trim();
        if text.is_empty() {
            return Self::empty(strands);
        }
        let signed = text
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| BurauError::Parse(t.to_string())))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(strands, &signed)
    }

    pub fn strands(&self) -> usize {
        self.strands
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn signed(&self) -> Vec<i64> {
        self.letters.iter().map(Letter::signed).collect()
    }

    pub fn concat(&self, other: &BraidWord) -> Result<BraidWord, BurauError> {
        if self.strands != other.strands {
            return Err(BurauError::StrandMismatch(self.strands, other.strands));
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(BraidWord { strands: self.strands, letters })
    }

    pub fn inverse(&self) -> BraidWord {
        BraidWord {
            strands: self.strands,
            letters: self.letters.iter().rev().map(Letter::inverted).collect(),
        }
    }

    pub fn push(&mut self, letter: Letter) {
        assert!(letter.index >= 1 && letter.index < self.strands);
        self.letters.push(letter);
    }

    /// Image in 𝔖ₙ as a 0-based map `j ↦ π(j)`, composed in the same order
    /// as the matrix product, so that the permutation matrix has `P e_j = e_{π(j)}`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.strands).collect();
        for l in self.letters.iter().rev() {
            for p in perm.iter_mut() {
                if *p == l.index - 1 {
                    *p = l.index;
                } else if *p == l.index {
                    *p = l.index - 1;
                }
            }
        }
        perm
    }

    pub fn permutation_matrix(&self) -> Vec<Vec<u8>> {
        let n = self.strands;
        let mut p = vec![vec![0u8; n]; n];
        for (j, &i) in self.permutation().iter().enumerate() {
            p[i][j] = 1;
        }
        p
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.signed().iter().map(i64::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Letter {
    type Err = BurauError;
    fn from_str(s: &str) -> Result<Self, BurauError> {
        let v: i64 = s.trim().parse().map_err(|_| BurauError::Parse(s.to_string()))?;
        if v == 0 {
            return Err(BurauError::Parse(s.to_string()));
        }
        Ok(Letter { index: v.unsigned_abs() as usize, inverse: v < 0 })
    }
}

/// The generator block `B = [[2,1],[−1,0]]`.
pub fn burau_block() -> IntMatrix {
    IntMatrix::from_rows(&[vec![2, 1], vec![-1, 0]]).expect("2×2")
}

/// `B⁻¹ = [[0,−1],[1,2]]`.
pub fn burau_block_inverse() -> IntMatrix {
    IntMatrix::from_rows(&[vec![0, -1], vec![1, 2]]).expect("2×2")
}

fn generator_matrix(n: usize, i: usize, inverse: bool) -> IntMatrix {
    let block = if inverse { burau_block_inverse() } else { burau_block() };
    let mut m = IntMatrix::identity(n);
    for r in 0..2 {
        for c in 0..2 {
            m[(i - 1 + r, i - 1 + c)] = block[(r, c)].clone();
        }
    }
    m
}

/// `1_{i−1} ⊕ B^{±1} ⊕ 1_{n−i−1}`.
pub fn burau_generator(n: usize, i: usize, inverse: bool) -> Result<GroupElement, BurauError> {
    if i == 0 || i >= n {
        return Err(BurauError::IndexOutOfRange { index: i as i64, strands: n });
    }
    Ok(GroupElement::certify(generator_matrix(n, i, inverse)).expect("generators lie in Q"))
}

/// Unreduced integral Burau matrix of a word together with its certification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurauImage {
    pub element: GroupElement,
    pub word: BraidWord,
}

/// Product of generator matrices, left to right.
pub fn burau_matrix(word: &BraidWord) -> IntMatrix {
    let n = word.strands();
    let mut m = IntMatrix::identity(n);
    for l in word.letters() {
        // Right multiplication by a generator only touches two columns.
        let (a, b) = (l.index - 1, l.index);
        for r in 0..n {
            let x = m[(r, a)].clone();
            let y = m[(r, b)].clone();
            let (nx, ny) = if l.inverse {
                // columns of B⁻¹: (0,1) and (−1,2)
                (y.clone(), BigInt::from(2) * &y - &x)
            } else {
                // columns of B: (2,−1) and (1,0)
                (BigInt::from(2) * &x - &y, x.clone())
            };
            m[(r, a)] = nx;
            m[(r, b)] = ny;
        }
    }
    m
}

pub fn burau(word: &BraidWord) -> BurauImage {
    let element = GroupElement::certify(burau_matrix(word)).expect("Burau images lie in T");
    debug_assert!(element.level() >= Level::Q);
    BurauImage { element, word: word.clone() }
}

/// Action on `{x : Σxᵢ = 0}` in the basis `f_i = e_i − e_{i+1}`.
pub fn reduced_burau(word: &BraidWord) -> IntMatrix {
    restrict_to_kernel(&burau_matrix(word))
}

/// Whether `1_{i−1} ⊕ braiding(1,1) ⊕ 1_{n−i−1}` equals the positive generator.
pub fn braiding_vs_burau_with(
    n: usize,
    i: usize,
    convention: BraidingConvention,
) -> Result<bool, BurauError> {
    let generator = burau_generator(n, i, false)?;
    let b = braiding(1, 1, convention);
    let lifted = IntMatrix::identity(i - 1)
        .block_sum(b.matrix())
        .block_sum(&IntMatrix::identity(n - i - 1));
    Ok(&lifted == generator.matrix())
}

pub fn braiding_vs_burau(n: usize, i: usize) -> Result<bool, BurauError> {
    braiding_vs_burau_with(n, i, BraidingConvention::Eq31)
}
