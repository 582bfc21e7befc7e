//! Exact integer linear algebra on the formed lattice ℤⁿ.
//!
//! ℤⁿ carries the skew form with `⟨e_i, e_j⟩ = sign(j − i)` and the functional
//! `φ(e_i) = 1`. The automorphism group `Tₙ` of this data is `Sp_{n−1}(ℤ)`;
//! `Qₙ` is the subgroup of elements reducing to a permutation matrix mod 2 and
//! `Tₙ[2]` the elements reducing to the identity.

mod group;
mod matrix;
mod smith;

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub use group::{
    braiding, classify_element, is_partial_basis, monoidal_sum, random_t_element, transvection,
    BraidingConvention, Classification, GroupElement, Level,
};
pub use matrix::IntMatrix;
pub use smith::{rank, smith_normal_form, SmithDecomposition};

pub(crate) use group::restrict_to_kernel;
pub(crate) use smith::bigint_strings;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}×{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("rows have different lengths")]
    Ragged,
    #[error("rank must be positive")]
    ZeroRank,
    #[error("{count} vectors cannot form a partial basis of ℤ^{rank}")]
    TooManyVectors { count: usize, rank: usize },
    #[error("matrix does not preserve the form and φ, or is not invertible")]
    NotInT,
}

/// A vector in ℤⁿ with arbitrary-precision entries.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(entries: Vec<BigInt>) -> Self {
        IntVector(entries)
    }

    pub fn zero(n: usize) -> Self {
        IntVector(vec![BigInt::zero(); n])
    }

    /// Standard basis vector `e_i`, 1-based as in the usual notation.
    pub fn basis(n: usize, i: usize) -> Self {
        assert!(1 <= i && i <= n, "basis index {i} out of range for ℤ^{n}");
        let mut v = Self::zero(n);
        v.0[i - 1] = BigInt::one();
        v
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_entries(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Entries narrowed to `i64`, if they all fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|x| i64::try_from(x).ok()).collect()
    }

    /// `{i : u_i odd}`, 1-based.
    pub fn odd_support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, x)| x.is_odd()).map(|(i, _)| i + 1).collect()
    }

    pub fn scale(&self, c: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|x| x * c).collect())
    }

    /// Concatenation `(self, other)`.
    pub fn concat(&self, other: &IntVector) -> IntVector {
        IntVector(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn slice(&self, range: std::ops::Range<usize>) -> IntVector {
        IntVector(self.0[range].to_vec())
    }
}

impl<T: Into<BigInt>> From<Vec<T>> for IntVector {
    fn from(v: Vec<T>) -> Self {
        IntVector(v.into_iter().map(Into::into).collect())
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        assert_eq!(self.len(), rhs.len());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl Mul<&IntVector> for &BigInt {
    type Output = IntVector;
    fn mul(self, rhs: &IntVector) -> IntVector {
        rhs.scale(self)
    }
}

impl fmt::Debug for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for IntVector {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.0.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntVector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter()
            .map(|s| s.parse::<BigInt>().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(IntVector)
    }
}

/// ℤⁿ with its standard skew form and functional φ. Both are determined by `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FormedModule {
    rank: usize,
}

impl FormedModule {
    pub fn new(rank: usize) -> Self {
        FormedModule { rank }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    fn check(&self, u: &IntVector) -> Result<(), LatticeError> {
        if u.len() != self.rank {
            return Err(LatticeError::DimensionMismatch { expected: self.rank, found: u.len() });
        }
        Ok(())
    }

    /// `⟨u, v⟩ = Σ_{i<j} (u_i v_j − u_j v_i)`.
    pub fn pairing(&self, u: &IntVector, v: &IntVector) -> Result<BigInt, LatticeError> {
        self.check(u)?;
        self.check(v)?;
        Ok(pairing_unchecked(u.entries(), v.entries()))
    }

    pub fn phi(&self, u: &IntVector) -> Result<BigInt, LatticeError> {
        self.check(u)?;
        Ok(u.entries().iter().sum())
    }

    /// Gram matrix `G_{ij} = ⟨e_i, e_j⟩`.
    pub fn gram(&self) -> IntMatrix {
        let n = self.rank;
        let mut g = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                g[(i, j)] = BigInt::from((j as i64 - i as i64).signum());
            }
        }
        g
    }

    /// `vₙ = e₁ − e₂ + … + (−1)^{n−1} eₙ`.
    pub fn distinguished_vector(&self) -> IntVector {
        distinguished_vector(self.rank).expect("rank zero has no distinguished vector")
    }

    /// The basis `f_i = e_i − e_{i+1}` of `ker φ`.
    pub fn kernel_basis(&self) -> Vec<IntVector> {
        (1..self.rank)
            .map(|i| &IntVector::basis(self.rank, i) - &IntVector::basis(self.rank, i + 1))
            .collect()
    }

    /// Gram matrix of the form restricted to `ker φ` in the basis `f_i`.
    pub fn kernel_gram(&self) -> IntMatrix {
        let basis = self.kernel_basis();
        let k = basis.len();
        let mut g = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                g[(i, j)] = pairing_unchecked(basis[i].entries(), basis[j].entries());
            }
        }
        g
    }
}

/// Linear-time evaluation of the standard form via prefix sums:
/// `⟨u, v⟩ = Σ_j v_j (Σ_{i<j} u_i) − Σ_j u_j (Σ_{i<j} v_i)`.
pub(crate) fn pairing_unchecked(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut pu = BigInt::zero();
    let mut pv = BigInt::zero();
    let mut acc = BigInt::zero();
    for (a, b) in u.iter().zip(v) {
        acc += &pu * b - &pv * a;
        pu += a;
        pv += b;
    }
    acc
}

pub fn form_pairing(m: &FormedModule, u: &IntVector, v: &IntVector) -> Result<BigInt, LatticeError> {
    m.pairing(u, v)
}

pub fn phi(m: &FormedModule, u: &IntVector) -> Result<BigInt, LatticeError> {
    m.phi(u)
}

pub fn distinguished_vector(n: usize) -> Result<IntVector, LatticeError> {
    if n == 0 {
        return Err(LatticeError::ZeroRank);
    }
    Ok(IntVector((0..n).map(|i| if i % 2 == 0 { BigInt::one() } else { -BigInt::one() }).collect()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn v(x: &[i64]) -> IntVector {
        IntVector::from(x.to_vec())
    }

    /// Direct double sum, independent of the prefix-sum evaluation.
    fn pairing_oracle(u: &[i64], w: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..u.len() {
            for j in 0..u.len() {
                let e = (j as i64 - i as i64).signum();
                s += u[i] * w[j] * e;
            }
        }
        s
    }

    #[test]
    fn form_examples() {
        let m = FormedModule::new(3);
        assert_eq!(m.pairing(&IntVector::basis(3, 1), &IntVector::basis(3, 2)).unwrap(), 1.into());
        assert_eq!(m.pairing(&IntVector::basis(3, 2), &IntVector::basis(3, 2)).unwrap(), 0.into());
        // (1,2): 1·1 − 1·0, (1,3): 1·1 − 0·0, (2,3): 1·1 − 0·1
        assert_eq!(pairing_oracle(&[1, 1, 0], &[0, 1, 1]), 3);
        assert_eq!(m.pairing(&v(&[1, 1, 0]), &v(&[0, 1, 1])).unwrap(), 3.into());
    }

    #[test]
    fn form_dimension_mismatch() {
        let m = FormedModule::new(3);
        assert!(matches!(
            m.pairing(&v(&[1, 0]), &v(&[0, 1, 1])),
            Err(LatticeError::DimensionMismatch { expected: 3, found: 2 })
        ));
        assert!(m.phi(&v(&[1])).is_err());
    }

    #[test]
    fn phi_examples() {
        let m3 = FormedModule::new(3);
        assert_eq!(m3.phi(&IntVector::basis(3, 2)).unwrap(), 1.into());
        assert_eq!(m3.phi(&IntVector::zero(3)).unwrap(), 0.into());
        assert_eq!(FormedModule::new(4).phi(&v(&[1, -1, 1, -1])).unwrap(), 0.into());
    }

    #[test]
    fn distinguished_vector_examples() {
        assert_eq!(distinguished_vector(4).unwrap(), v(&[1, -1, 1, -1]));
        assert_eq!(distinguished_vector(1).unwrap(), v(&[1]));
        assert_eq!(distinguished_vector(0), Err(LatticeError::ZeroRank));
        let m5 = FormedModule::new(5);
        let v5 = m5.distinguished_vector();
        for i in 1..=5 {
            assert!(m5.pairing(&v5, &IntVector::basis(5, i)).unwrap().is_zero());
        }
    }

    #[test]
    fn distinguished_vector_pairs_like_phi_for_even_rank() {
        for n in [2usize, 4, 6] {
            let m = FormedModule::new(n);
            let vn = m.distinguished_vector();
            assert_eq!(m.phi(&vn).unwrap(), BigInt::zero());
            for i in 1..=n {
                let e = IntVector::basis(n, i);
                assert_eq!(m.pairing(&vn, &e).unwrap(), m.phi(&e).unwrap());
            }
        }
        for n in [1usize, 3, 5, 7] {
            let m = FormedModule::new(n);
            assert_eq!(m.phi(&m.distinguished_vector()).unwrap(), BigInt::one());
        }
    }

    #[test]
    fn kernel_gram_is_unimodular_for_odd_rank() {
        for n in [3usize, 5, 7, 9] {
            let d = FormedModule::new(n).kernel_gram().determinant().unwrap();
            assert_eq!(d, BigInt::one(), "n = {n}");
        }
        for n in [2usize, 4, 6] {
            assert!(FormedModule::new(n).kernel_gram().determinant().unwrap().is_zero());
        }
    }

    proptest! {
        #[test]
        fn pairing_matches_double_sum_and_is_skew(
            (u, w) in (1usize..8).prop_flat_map(|n| (
                prop::collection::vec(-20i64..21, n),
                prop::collection::vec(-20i64..21, n),
            ))
        ) {
            let m = FormedModule::new(u.len());
            let p = m.pairing(&v(&u), &v(&w)).unwrap();
            prop_assert_eq!(p.clone(), BigInt::from(pairing_oracle(&u, &w)));
            prop_assert_eq!(-p, m.pairing(&v(&w), &v(&u)).unwrap());
        }
    }
}
