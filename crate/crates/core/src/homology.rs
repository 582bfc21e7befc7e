//! Simplicial homology over ℚ, 𝔽₂ and ℤ.
//!
//! Ranks come from sparse column reduction (fraction-free over ℤ, XOR over 𝔽₂);
//! torsion comes from the Smith normal form of the dense boundary matrix and is
//! only computed when integer coefficients are requested.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complexes::{destab_faces, Family, FiniteComplex};
use crate::lattice::{bigint_strings, smith_normal_form, IntMatrix, IntVector};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("complex is not closed under faces: face {face:?} of simplex {simplex:?} is missing")]
    NotClosed { simplex: Vec<usize>, face: Vec<usize> },
    #[error("boundary of boundary is nonzero in degree {0}")]
    BoundarySquared(usize),
    #[error("face map failed: {0}")]
    Face(String),
}

/// Column-major sparse integer matrix; each column is sorted by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub columns: Vec<Vec<(usize, BigInt)>>,
}

impl SparseMatrix {
    pub fn nnz(&self) -> usize {
        self.columns.iter().map(Vec::len).sum()
    }

    pub fn to_dense(&self) -> IntMatrix {
        let mut m = IntMatrix::zeros(self.rows, self.cols);
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                m[(*i, j)] = x.clone();
            }
        }
        m
    }

    /// `self · other`, both sparse.
    pub fn mul(&self, other: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.cols, other.rows);
        let columns = other
            .columns
            .iter()
            .map(|col| {
                let mut acc: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (k, b) in col {
                    for (i, a) in &self.columns[*k] {
                        *acc.entry(*i).or_default() += a * b;
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        SparseMatrix { rows: self.rows, cols: other.cols, columns }
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(Vec::is_empty)
    }
}

/// Rank over ℚ by fraction-free column reduction. Columns are processed in order
/// of increasing fill, ties by index; each column is reduced against stored
/// pivots keyed by their largest row and divided by its content.
pub fn rank_q(m: &SparseMatrix) -> usize {
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&j| (m.columns[j].len(), j));
    let mut pivots: HashMap<usize, Vec<(usize, BigInt)>> = HashMap::new();
    for j in order {
        let mut col = m.columns[j].clone();
        while let Some((low, lead)) = col.last().cloned() {
            let Some(p) = pivots.get(&low) else { break };
            let plead = &p.last().expect("pivot columns are nonzero").1;
            let g = lead.gcd(plead);
            let (a, b) = (plead / &g, &lead / &g);
            col = combine(&col, &a, p, &b);
            normalise(&mut col);
        }
        if let Some((low, _)) = col.last() {
            pivots.insert(*low, col);
        }
    }
    pivots.len()
}

/// `a·x − b·y` on sorted sparse columns.
fn combine(x: &[(usize, BigInt)], a: &BigInt, y: &[(usize, BigInt)], b: &BigInt) -> Vec<(usize, BigInt)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let (r, v) = match (x.get(i), y.get(j)) {
            (Some((ri, vi)), Some((rj, _))) if ri < rj => {
                i += 1;
                (*ri, a * vi)
            }
            (Some((ri, _)), Some((rj, vj))) if rj < ri => {
                j += 1;
                (*rj, -(b * vj))
            }
            (Some((ri, vi)), Some((_, vj))) => {
                i += 1;
                j += 1;
                (*ri, a * vi - b * vj)
            }
            (Some((ri, vi)), None) => {
                i += 1;
                (*ri, a * vi)
            }
            (None, Some((rj, vj))) => {
                j += 1;
                (*rj, -(b * vj))
            }
            (None, None) => unreachable!(),
        };
        if !v.is_zero() {
            out.push((r, v));
        }
    }
    out
}

fn normalise(col: &mut [(usize, BigInt)]) {
    let g = col.iter().fold(BigInt::zero(), |g, (_, v)| g.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for (_, v) in col.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank over 𝔽₂.
pub fn rank_f2(m: &SparseMatrix) -> usize {
    let mut order: Vec<usize> = (0..m.cols).collect();
    order.sort_by_key(|&j| (m.columns[j].len(), j));
    let mut pivots: HashMap<usize, Vec<usize>> = HashMap::new();
    for j in order {
        let mut col: Vec<usize> = m.columns[j].iter().filter(|(_, v)| v.is_odd()).map(|(r, _)| *r).collect();
        while let Some(&low) = col.last() {
            let Some(p) = pivots.get(&low) else { break };
            col = xor(&col, p);
        }
        if let Some(&low) = col.last() {
            pivots.insert(low, col);
        }
    }
    pivots.len()
}

fn xor(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) if x == y => {
                i += 1;
                j += 1;
            }
            (Some(x), Some(y)) if x < y => {
                out.push(*x);
                i += 1;
            }
            (Some(_), Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (Some(x), None) => {
                out.push(*x);
                i += 1;
            }
            (None, Some(y)) => {
                out.push(*y);
                j += 1;
            }
            (None, None) => unreachable!(),
        }
    }
    out
}

/// Simplicial chains of a finite complex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainComplexData {
    /// Number of `d`-simplices for `d = 0..=dim`.
    pub dims: Vec<usize>,
    /// `boundaries[d − 1] = ∂_d : C_d → C_{d−1}` for `d ≥ 1`.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplexData {
    pub fn top_dimension(&self) -> i64 {
        self.dims.len() as i64 - 1
    }

    /// The augmentation `C_0 → ℤ`.
    pub fn augmentation(&self) -> SparseMatrix {
        let n0 = self.dims.first().copied().unwrap_or(0);
        SparseMatrix { rows: 1, cols: n0, columns: (0..n0).map(|_| vec![(0, BigInt::one())]).collect() }
    }
}

/// Boundary matrices from alternating sums of faces. For `W_Q` complexes the
/// faces are computed with the destabilisation face maps.
pub fn chain_complex(fc: &FiniteComplex) -> Result<ChainComplexData, HomologyError> {
    let dims = fc.f_vector();
    let mut index: Vec<HashMap<&[usize], usize>> = vec![HashMap::new(); dims.len()];
    for s in fc.simplices() {
        let d = s.len() - 1;
        let k = index[d].len();
        index[d].insert(s.as_slice(), k);
    }
    let vertex_of: HashMap<&IntVector, usize> = fc.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let use_destab = fc.family == Some(Family::WQ) && fc.relative_to.is_none();

    let mut boundaries = Vec::new();
    for d in 1..dims.len() {
        let simplices: Vec<&Vec<usize>> = fc.simplices_of_dim(d).collect();
        let columns = simplices
            .par_iter()
            .map(|s| {
                let faces: Vec<Vec<usize>> = if use_destab {
                    let coords: Vec<IntVector> = s.iter().map(|&i| fc.vertices()[i].clone()).collect();
                    destab_faces(fc.n, &coords)
                        .map_err(|e| HomologyError::Face(e.to_string()))?
                        .into_iter()
                        .map(|f| f.iter().map(|v| vertex_of.get(v).copied().unwrap_or(usize::MAX)).collect())
                        .collect()
                } else {
                    (0..s.len())
                        .map(|i| {
                            let mut f = (*s).clone();
                            f.remove(i);
                            f
                        })
                        .collect()
                };
                let mut col: BTreeMap<usize, BigInt> = BTreeMap::new();
                for (i, f) in faces.into_iter().enumerate() {
                    let r = *index[d - 1]
                        .get(f.as_slice())
                        .ok_or_else(|| HomologyError::NotClosed { simplex: (*s).clone(), face: f.clone() })?;
                    *col.entry(r).or_default() += if i % 2 == 0 { 1 } else { -1 };
                }
                Ok(col.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            })
            .collect::<Result<Vec<_>, HomologyError>>()?;
        boundaries.push(SparseMatrix { rows: dims[d - 1], cols: dims[d], columns });
    }
    for d in 1..boundaries.len() {
        if !boundaries[d - 1].mul(&boundaries[d]).is_zero() {
            return Err(HomologyError::BoundarySquared(d));
        }
    }
    Ok(ChainComplexData { dims, boundaries })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Coefficients {
    Q,
    F2,
    Z,
}

impl std::str::FromStr for Coefficients {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Q" | "q" => Ok(Coefficients::Q),
            "F2" | "f2" => Ok(Coefficients::F2),
            "Z" | "z" => Ok(Coefficients::Z),
            other => Err(format!("unknown coefficients {other:?} (expected Q, F2 or Z)")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyOptions {
    pub coefficients: Coefficients,
    pub reduced: bool,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions { coefficients: Coefficients::Q, reduced: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub simplices: usize,
    pub betti_q: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub betti_f2: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", with = "opt_bigints", default)]
    pub torsion: Option<Vec<BigInt>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyReport {
    pub coefficients: Coefficients,
    pub reduced: bool,
    pub degrees: Vec<DegreeHomology>,
    /// Alternating simplex count (minus one when reduced).
    pub euler_from_simplices: i64,
    pub euler_from_betti: i64,
    /// Largest `c` with `H̃_d = 0` for all `d ≤ c` in the computed range
    /// (`−2` when `H̃_{−1} ≠ 0`, i.e. the complex is empty).
    pub connectivity: i64,
}

impl HomologyReport {
    pub fn euler_holds(&self) -> bool {
        self.euler_from_simplices == self.euler_from_betti
    }

    pub fn betti_q(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti_q).collect()
    }

    pub fn degree(&self, d: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|x| x.degree == d)
    }
}

pub fn homology(cc: &ChainComplexData, options: HomologyOptions) -> HomologyReport {
    let top = cc.dims.len();
    // maps[d] = ∂_d for d = 0..=top (∂_0 is the augmentation), then a zero ∂_{top+1}.
    let mut maps: Vec<SparseMatrix> = Vec::with_capacity(top + 1);
    maps.push(cc.augmentation());
    maps.extend(cc.boundaries.iter().cloned());
    let want_f2 = options.coefficients == Coefficients::F2;
    let want_z = options.coefficients == Coefficients::Z;
    let ranks: Vec<(usize, usize)> = maps
        .par_iter()
        .map(|m| (rank_q(m), if want_f2 { rank_f2(m) } else { 0 }))
        .collect();
    let torsion: Vec<Vec<BigInt>> = if want_z {
        maps.par_iter().map(|m| smith_normal_form(&m.to_dense()).torsion()).collect()
    } else {
        Vec::new()
    };
    let rank_at = |d: usize| ranks.get(d).copied().unwrap_or((0, 0));

    let mut reduced_zero = Vec::new();
    let mut degrees = Vec::new();
    // Reduced degree −1: ℤ / im ε.
    let (e_q, e_f2) = rank_at(0);
    let minus_one = DegreeHomology {
        degree: -1,
        simplices: 1,
        betti_q: 1 - e_q,
        betti_f2: want_f2.then_some(1 - e_f2),
        torsion: want_z.then(Vec::new),
    };
    reduced_zero.push(is_trivial(&minus_one));
    if options.reduced {
        degrees.push(minus_one);
    }
    for d in 0..top {
        let (rq_in, rf_in) = rank_at(d + 1);
        let (rq_out, rf_out) = if d == 0 && !options.reduced { (0, 0) } else { rank_at(d) };
        let entry = DegreeHomology {
            degree: d as i64,
            simplices: cc.dims[d],
            betti_q: cc.dims[d] - rq_out - rq_in,
            betti_f2: want_f2.then(|| cc.dims[d] - rf_out - rf_in),
            torsion: want_z.then(|| torsion.get(d + 1).cloned().unwrap_or_default()),
        };
        let reduced_trivial = if d == 0 && !options.reduced {
            let (eq, ef) = rank_at(0);
            let q = entry.betti_q - eq == 0;
            let f = entry.betti_f2.map_or(true, |b| b - ef == 0);
            let t = entry.torsion.as_ref().map_or(true, Vec::is_empty);
            q && f && t
        } else {
            is_trivial(&entry)
        };
        reduced_zero.push(reduced_trivial);
        degrees.push(entry);
    }

    let connectivity = reduced_zero.iter().take_while(|z| **z).count() as i64 - 2;
    let sign = |d: i64| if d.rem_euclid(2) == 0 { 1 } else { -1 };
    let mut euler_from_simplices: i64 = cc.dims.iter().enumerate().map(|(d, &f)| sign(d as i64) * f as i64).sum();
    if options.reduced {
        euler_from_simplices -= 1;
    }
    let euler_from_betti = degrees.iter().map(|x| sign(x.degree) * x.betti_q as i64).sum();
    HomologyReport {
        coefficients: options.coefficients,
        reduced: options.reduced,
        degrees,
        euler_from_simplices,
        euler_from_betti,
        connectivity,
    }
}

fn is_trivial(h: &DegreeHomology) -> bool {
    h.betti_q == 0
        && h.betti_f2.map_or(true, |b| b == 0)
        && h.torsion.as_ref().map_or(true, Vec::is_empty)
}

mod opt_bigints {
    use super::bigint_strings;
    use num_bigint::BigInt;
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<Vec<BigInt>>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(v) => bigint_strings::serialize(v, s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Vec<BigInt>>, D::Error> {
        let raw: Option<Vec<String>> = Option::deserialize(d)?;
        raw.map(|r| r.iter().map(|s| s.parse().map_err(serde::de::Error::custom)).collect())
            .transpose()
    }
}

/// Convenience: chains and homology in one call.
pub fn complex_homology(fc: &FiniteComplex, options: HomologyOptions) -> Result<HomologyReport, HomologyError> {
    Ok(homology(&chain_complex(fc)?, options))
}

/// `∂Δᵏ` on vertices `e_1, …, e_{k+1}` of ℤ^{k+1}: all proper nonempty faces.
pub fn simplex_boundary(k: usize) -> FiniteComplex {
    let vertices: Vec<IntVector> = (1..=k + 1).map(|i| IntVector::basis(k + 1, i)).collect();
    let mut simplices = Vec::new();
    for mask in 1u64..(1 << (k + 1)) - 1 {
        simplices.push((0..=k).filter(|i| mask >> i & 1 == 1).collect());
    }
    FiniteComplex::from_parts(vertices, simplices, false).expect("valid simplex boundary")
}

/// The six-vertex triangulation of ℝP².
pub fn rp2() -> FiniteComplex {
    let faces = [
        [0, 1, 2], [0, 2, 3], [0, 3, 4], [0, 4, 5], [0, 5, 1],
        [1, 2, 4], [2, 3, 5], [3, 4, 1], [4, 5, 2], [5, 1, 3],
    ];
    let vertices: Vec<IntVector> = (1..=6).map(|i| IntVector::basis(6, i)).collect();
    let mut simplices: Vec<Vec<usize>> = Vec::new();
    for f in faces {
        simplices.push(f.to_vec());
        for i in 0..3 {
            let mut e = f.to_vec();
            e.remove(i);
            simplices.push(e);
        }
    }
    simplices.extend((0..6).map(|i| vec![i]));
    FiniteComplex::from_parts(vertices, simplices, false).expect("valid triangulation")
}
