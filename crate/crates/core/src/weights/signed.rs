use std::fmt;

use serde::{Deserialize, Serialize};

use super::{positive_roots, Weight, WeightsError};

/// An element of the hyperoctahedral group, in one-line notation:
/// `images[i] = ±j` means `e_{i+1} ↦ ±e_j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct SignedPermutation {
    images: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(images: Vec<i64>) -> Result<Self, WeightsError> {
        let n = images.len() as i64;
        let mut seen = vec![false; images.len()];
        for &x in &images {
            let a = x.abs();
            if a < 1 || a > n || std::mem::replace(&mut seen[(a - 1) as usize], true) {
                return Err(WeightsError::NotSignedPermutation(images));
            }
        }
        Ok(SignedPermutation { images })
    }

    pub fn identity(n: usize) -> Self {
        SignedPermutation { images: (1..=n as i64).collect() }
    }

    /// Simple reflection `s_i`: for `i < n` it swaps `e_i, e_{i+1}`; `s_n` negates `e_n`.
    pub fn simple_reflection(n: usize, i: usize) -> Self {
        assert!((1..=n).contains(&i), "simple reflection index out of range");
        let mut w = Self::identity(n);
        if i < n {
            w.images.swap(i - 1, i);
        } else {
            w.images[n - 1] = -(n as i64);
        }
        w
    }

    /// Negates the first coordinate.
    pub fn first_sign_flip(n: usize) -> Self {
        let mut w = Self::identity(n);
        w.images[0] = -1;
        w
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[i64] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x == i as i64 + 1)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.rank(), other.rank(), "rank mismatch");
        let images = other
            .images
            .iter()
            .map(|&x| x.signum() * self.images[(x.abs() - 1) as usize])
            .collect();
        SignedPermutation { images }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0; self.rank()];
        for (i, &x) in self.images.iter().enumerate() {
            images[(x.abs() - 1) as usize] = x.signum() * (i as i64 + 1);
        }
        SignedPermutation { images }
    }

    /// Linear action on coordinates.
    pub fn act(&self, x: &Weight) -> Result<Weight, WeightsError> {
        x.check_len(self.rank())?;
        Ok(self.act_unchecked(x))
    }

    pub(crate) fn act_unchecked(&self, x: &Weight) -> Weight {
        let mut out = vec![0; self.rank()];
        for (i, &s) in self.images.iter().enumerate() {
            out[(s.abs() - 1) as usize] = s.signum() * x.0[i];
        }
        Weight(out)
    }

    /// Coxeter length: the number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        positive_roots(self.rank())
            .iter()
            .filter(|a| {
                let image = self.act_unchecked(a);
                image.0.iter().find(|&&c| c != 0).is_some_and(|&c| c < 0)
            })
            .count()
    }

    /// `(−1)^ℓ`, computed as the determinant of the signed permutation matrix.
    pub fn sign(&self) -> i64 {
        let n = self.rank();
        let mut visited = vec![false; n];
        let mut s = 1;
        for start in 0..n {
            if visited[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !visited[i] {
                visited[i] = true;
                i = (self.images[i].abs() - 1) as usize;
                len += 1;
            }
            if len % 2 == 0 {
                s = -s;
            }
        }
        s * self.images.iter().map(|x| x.signum()).product::<i64>()
    }

    /// All `2ⁿ·n!` elements.
    pub fn all(n: usize) -> Vec<SignedPermutation> {
        let mut perms: Vec<Vec<i64>> = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for v in 1..=n as i64 {
                    if !p.iter().any(|x: &i64| x.abs() == v) {
                        for s in [v, -v] {
                            let mut q = p.clone();
                            q.push(s);
                            next.push(q);
                        }
                    }
                }
            }
            perms = next;
        }
        perms.into_iter().map(|images| SignedPermutation { images }).collect()
    }
}

impl TryFrom<Vec<i64>> for SignedPermutation {
    type Error = WeightsError;
    fn try_from(v: Vec<i64>) -> Result<Self, Self::Error> {
        SignedPermutation::new(v)
    }
}

impl From<SignedPermutation> for Vec<i64> {
    fn from(w: SignedPermutation) -> Self {
        w.images
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.images.iter().map(i64::to_string).collect();
        write!(f, "[{}]", s.join(","))
    }
}
