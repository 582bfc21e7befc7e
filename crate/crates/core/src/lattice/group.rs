use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{pairing_unchecked, smith_normal_form, FormedModule, IntMatrix, IntVector, LatticeError};

/// Certification levels, coarsest first: `T ⊃ Q ⊃ T[2]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Level {
    T,
    Q,
    #[serde(rename = "T[2]")]
    T2,
}

impl Level {
    /// The coarser of two levels, i.e. the level of a block sum.
    pub fn meet(self, other: Level) -> Level {
        self.min(other)
    }
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Level::T => "T",
            Level::Q => "Q",
            Level::T2 => "T[2]",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Classification {
    NotInT,
    In(Level),
}

impl Classification {
    pub fn level(self) -> Option<Level> {
        match self {
            Classification::NotInT => None,
            Classification::In(l) => Some(l),
        }
    }
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Classification::NotInT => f.write_str("not_in_T"),
            Classification::In(l) => l.fmt(f),
        }
    }
}

/// Finest level of `m`, found by checking the defining identities on basis vectors.
pub fn classify_element(m: &IntMatrix) -> Result<Classification, LatticeError> {
    if !m.is_square() {
        return Err(LatticeError::NotSquare { rows: m.rows(), cols: m.cols() });
    }
    let n = m.rows();
    let cols: Vec<IntVector> = (0..n).map(|j| m.column(j)).collect();
    let one = BigInt::one();
    for (j, c) in cols.iter().enumerate() {
        if c.entries().iter().sum::<BigInt>() != one {
            return Ok(Classification::NotInT);
        }
        for d in cols.iter().take(j) {
            if pairing_unchecked(d.entries(), c.entries()) != one {
                return Ok(Classification::NotInT);
            }
        }
    }
    // Form preservation alone does not force invertibility when n is odd.
    if !m.determinant()?.abs().is_one() {
        return Ok(Classification::NotInT);
    }
    let level = if m.is_identity_mod2() {
        Level::T2
    } else if m.is_permutation_mod2() {
        Level::Q
    } else {
        Level::T
    };
    Ok(Classification::In(level))
}

/// An automorphism of the formed lattice ℤⁿ together with its verified level.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupElement {
    matrix: IntMatrix,
    level: Level,
}

impl GroupElement {
    pub fn certify(matrix: IntMatrix) -> Result<Self, LatticeError> {
        match classify_element(&matrix)? {
            Classification::In(level) => Ok(GroupElement { matrix, level }),
            Classification::NotInT => Err(LatticeError::NotInT),
        }
    }

    pub fn identity(n: usize) -> Self {
        GroupElement { matrix: IntMatrix::identity(n), level: Level::T2 }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.matrix
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `self ∘ other`, recertified.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, LatticeError> {
        GroupElement::certify(self.matrix.checked_mul(&other.matrix)?)
    }

    pub fn apply(&self, v: &IntVector) -> Result<IntVector, LatticeError> {
        self.matrix.apply(v)
    }

    /// Matrix of the action on `ker φ` in the basis `f_i = e_i − e_{i+1}`.
    pub fn restrict_to_kernel(&self) -> IntMatrix {
        restrict_to_kernel(&self.matrix)
    }
}

/// Coordinates of `x ∈ ker φ` in the basis `f_i = e_i − e_{i+1}` are its prefix sums.
pub(crate) fn kernel_coordinates(x: &IntVector) -> Vec<BigInt> {
    let n = x.len();
    let mut acc = BigInt::zero();
    let mut out = Vec::with_capacity(n.saturating_sub(1));
    for k in 0..n.saturating_sub(1) {
        acc += &x[k];
        out.push(acc.clone());
    }
    out
}

pub(crate) fn restrict_to_kernel(m: &IntMatrix) -> IntMatrix {
    let n = m.rows();
    let module = FormedModule::new(n);
    let images: Vec<IntVector> = module
        .kernel_basis()
        .iter()
        .map(|f| m.apply(f).expect("square matrix"))
        .collect();
    let k = n.saturating_sub(1);
    let mut r = IntMatrix::zeros(k, k);
    for (j, img) in images.iter().enumerate() {
        for (i, c) in kernel_coordinates(img).into_iter().enumerate() {
            r[(i, j)] = c;
        }
    }
    r
}

/// Block sum `M ⊕ M′`. The standard form on ℤ^{a+b} is the twisted sum form,
/// so the result is certified directly.
pub fn monoidal_sum(a: &GroupElement, b: &GroupElement) -> GroupElement {
    let matrix = a.matrix.block_sum(&b.matrix);
    let certified = GroupElement::certify(matrix).expect("block sum of T-elements lies in T");
    debug_assert_eq!(certified.level, a.level.meet(b.level));
    certified
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BraidingConvention {
    /// `(x, y) ↦ (y + 2φ(x)v_m, (−1)^m x)`.
    Eq31,
    /// `(x, y) ↦ ((−1)^n y, x + (−1)^{n+1} 2φ(y)v_n)`.
    Eq32,
}

impl std::str::FromStr for BraidingConvention {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "eq31" => Ok(BraidingConvention::Eq31),
            "eq32" => Ok(BraidingConvention::Eq32),
            other => Err(format!("unknown braiding convention {other:?} (expected eq31 or eq32)")),
        }
    }
}

fn alternating(k: usize) -> impl Iterator<Item = i64> {
    (0..k).map(|i| if i % 2 == 0 { 1 } else { -1 })
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// The braiding `ℤⁿ ⊕ ℤᵐ → ℤᵐ ⊕ ℤⁿ` as an `(n+m)×(n+m)` matrix.
pub fn braiding(n: usize, m: usize, convention: BraidingConvention) -> GroupElement {
    let mut a = IntMatrix::zeros(n + m, n + m);
    match convention {
        BraidingConvention::Eq31 => {
            for j in 0..n {
                for (i, s) in alternating(m).enumerate() {
                    a[(i, j)] = BigInt::from(2 * s);
                }
                a[(m + j, j)] = BigInt::from(sign(m));
            }
            for j in 0..m {
                a[(j, n + j)] = BigInt::one();
            }
        }
        BraidingConvention::Eq32 => {
            for j in 0..n {
                a[(m + j, j)] = BigInt::one();
            }
            for j in 0..m {
                a[(j, n + j)] = BigInt::from(sign(n));
                for (i, s) in alternating(n).enumerate() {
                    a[(m + i, n + j)] = BigInt::from(-sign(n) * 2 * s);
                }
            }
        }
    }
    GroupElement::certify(a).expect("braiding matrices lie in T")
}

/// True iff the vectors extend to a basis of ℤⁿ, i.e. every elementary divisor is 1.
pub fn is_partial_basis(vectors: &[IntVector], ambient: &FormedModule) -> Result<bool, LatticeError> {
    let n = ambient.rank();
    if vectors.len() > n {
        return Err(LatticeError::TooManyVectors { count: vectors.len(), rank: n });
    }
    if vectors.is_empty() {
        return Ok(true);
    }
    let m = IntMatrix::from_vectors(n, vectors)?;
    let snf = smith_normal_form(&m);
    Ok(snf.rank == vectors.len() && snf.all_units())
}

/// Symplectic transvection `x ↦ x + c⟨u, x⟩u` with `φ(u) = 0`; lies in T.
pub fn transvection(u: &IntVector, c: &BigInt) -> Result<GroupElement, LatticeError> {
    let module = FormedModule::new(u.len());
    if !module.phi(u)?.is_zero() {
        return Err(LatticeError::NotInT);
    }
    let n = u.len();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        let pair = module.pairing(u, &IntVector::basis(n, j + 1))?;
        if pair.is_zero() {
            continue;
        }
        for i in 0..n {
            m[(i, j)] += c * &pair * &u[i];
        }
    }
    GroupElement::certify(m)
}

/// Product of `steps` random transvections along short vectors of `ker φ`.
/// Typically lands in T but not in Q.
pub fn random_t_element<R: Rng + ?Sized>(n: usize, steps: usize, rng: &mut R) -> GroupElement {
    let mut g = GroupElement::identity(n);
    if n < 2 {
        return g;
    }
    for _ in 0..steps {
        let mut u = vec![0i64; n];
        for x in u.iter_mut().take(n - 1) {
            *x = rng.gen_range(-1..=1);
        }
        u[n - 1] = -u[..n - 1].iter().sum::<i64>();
        let c = BigInt::from(*[-1i64, 1].get(rng.gen_range(0..2)).unwrap());
        let t = transvection(&IntVector::from(u), &c).expect("u lies in ker φ");
        g = t.compose(&g).expect("same rank");
    }
    g
}
