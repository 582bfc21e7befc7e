//! Smith normal form over the integers.
//!
//! Pivoting always moves a nonzero entry of minimal absolute value in the
//! active submatrix to the pivot position, ties broken by the lowest
//! `(row, column)` index, so the elimination sequence is deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmithDecomposition {
    /// Nonzero elementary divisors `d₁ | d₂ | …`, all positive.
    #[serde(with = "bigint_strings")]
    pub diagonal: Vec<BigInt>,
    pub rank: usize,
}

impl SmithDecomposition {
    /// Divisors greater than one, i.e. the torsion coefficients of the cokernel.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.diagonal.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    pub fn all_units(&self) -> bool {
        self.diagonal.iter().all(One::is_one)
    }
}

pub fn smith_normal_form(m: &IntMatrix) -> SmithDecomposition {
    let mut a = m.to_rows();
    let rows = m.rows();
    let cols = m.cols();
    let mut diagonal = Vec::new();

    for t in 0..rows.min(cols) {
        let Some((pi, pj)) = min_abs_entry(&a, t) else { break };
        a.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }

        loop {
            // Clear column t below the pivot.
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                if !q.is_zero() {
                    let (head, tail) = a.split_at_mut(i);
                    let pivot_row = &head[t];
                    for (x, p) in tail[0][t..].iter_mut().zip(&pivot_row[t..]) {
                        *x -= &q * p;
                    }
                }
                dirty |= !a[i][t].is_zero();
            }
            // Clear row t right of the pivot.
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                if !q.is_zero() {
                    for row in a.iter_mut() {
                        let p = row[t].clone();
                        row[j] -= &q * p;
                    }
                }
                dirty |= !a[t][j].is_zero();
            }
            if dirty {
                // A nonzero remainder is smaller than the pivot: move it in.
                let (pi, pj) = min_in_cross(&a, t);
                a.swap(t, pi);
                for row in a.iter_mut() {
                    row.swap(t, pj);
                }
                continue;
            }
            // Pivot must divide the rest of the active block.
            let bad = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !a[i][j].is_multiple_of(&a[t][t])));
            match bad {
                Some(i) => {
                    let (head, tail) = a.split_at_mut(i);
                    for (x, y) in head[t][t..].iter_mut().zip(&tail[0][t..]) {
                        *x += y;
                    }
                }
                None => break,
            }
        }
        diagonal.push(a[t][t].abs());
    }

    let rank = diagonal.len();
    SmithDecomposition { diagonal, rank }
}

fn min_abs_entry(a: &[Vec<BigInt>], t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for (i, row) in a.iter().enumerate().skip(t) {
        for (j, x) in row.iter().enumerate().skip(t) {
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().map_or(true, |(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Minimal nonzero entry among the pivot, its column and its row.
fn min_in_cross(a: &[Vec<BigInt>], t: usize) -> (usize, usize) {
    let mut best = (t, t, a[t][t].abs());
    let mut consider = |i: usize, j: usize, x: &BigInt| {
        if !x.is_zero() {
            let ax = x.abs();
            if ax < best.2 || (ax == best.2 && (i, j) < (best.0, best.1)) {
                best = (i, j, ax);
            }
        }
    };
    for (i, row) in a.iter().enumerate().skip(t) {
        consider(i, t, &row[t]);
    }
    for (j, x) in a[t].iter().enumerate().skip(t) {
        consider(t, j, x);
    }
    (best.0, best.1)
}

/// Rank over ℚ.
pub fn rank(m: &IntMatrix) -> usize {
    smith_normal_form(m).rank
}

pub(crate) mod bigint_strings {
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        let raw: Vec<String> = Vec::deserialize(d)?;
        raw.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect()
    }
}
