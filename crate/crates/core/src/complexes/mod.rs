//! The complexes `Zₙ ⊃ Yₙ ⊃ IXₙ`, `Xₙ` and the destabilisation complex
//! `W(𝖰, n)`, truncated to a coefficient box `[−b, b]ⁿ`.
//!
//! `X` and `W_Q` are directed: each simplex is stored in its canonical order
//! (`⟨u_i, u_j⟩ = 1` for `i < j`). The other families store simplices as
//! sorted vertex-index sets.

mod build;
mod ops;
mod predicates;

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::IntVector;

pub use build::{build_complex, Budget, BuildStats};
pub use ops::{
    bracket, braid_shift, canonical_orders, check_vertex_isomorphism, destab_faces, left_link,
    IsomorphismError,
};
pub use predicates::{orbit_conditions, rho_set, simplex_predicate, vertex_predicate, OrbitKind, OrbitReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    Z,
    Y,
    IX,
    X,
    /// Partial 𝖰-bases of every size up to `n`.
    #[serde(rename = "W_Q")]
    WQ,
}

impl Family {
    pub fn is_ordered(self) -> bool {
        matches!(self, Family::X | Family::WQ)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Z => "Z",
            Family::Y => "Y",
            Family::IX => "IX",
            Family::X => "X",
            Family::WQ => "W_Q",
        })
    }
}

impl FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "Z" | "z" => Ok(Family::Z),
            "Y" | "y" => Ok(Family::Y),
            "IX" | "ix" => Ok(Family::IX),
            "X" | "x" => Ok(Family::X),
            "W_Q" | "WQ" | "w_q" | "wq" => Ok(Family::WQ),
            other => Err(format!("unknown family {other:?} (expected Z, Y, IX, X or W_Q)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ComplexError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{kind:?}-orbit tuples of size {size} are outside the range of the orbit conditions for n = {n}")]
    SizeBound { kind: OrbitKind, size: usize, n: usize },
    #[error("budget exceeded: {what} (limit {limit}); partial statistics: {stats}")]
    BudgetExceeded { what: &'static str, limit: usize, stats: BuildStats },
    #[error("relative simplex is not a simplex of Z_{n}")]
    InvalidRelativeSimplex { n: usize },
    #[error("simplex is not in the complex")]
    SimplexAbsent,
    #[error("malformed simplex: {0}")]
    Malformed(String),
    #[error("invalid complex file: {0}")]
    InvalidFile(String),
}

/// What to build: family, ambient rank, box, and an optional `σ` for `W(σ)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexSpec {
    pub family: Family,
    pub n: usize,
    #[serde(rename = "box")]
    pub box_bound: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_to: Option<Vec<IntVector>>,
}

impl ComplexSpec {
    pub fn new(family: Family, n: usize, box_bound: u32) -> Self {
        ComplexSpec { family, n, box_bound, relative_to: None }
    }

    pub fn relative(mut self, sigma: Vec<IntVector>) -> Self {
        self.relative_to = Some(sigma);
        self
    }
}

/// A finite complex with explicit vertex coordinates.
///
/// `simplices` lists every simplex of every dimension (vertices included),
/// sorted by dimension and then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteComplex {
    pub family: Option<Family>,
    pub n: usize,
    pub box_bound: Option<u32>,
    pub ordered: bool,
    pub relative_to: Option<Vec<IntVector>>,
    vertices: Vec<IntVector>,
    simplices: Vec<Vec<usize>>,
}

impl FiniteComplex {
    /// Assembles a complex, sorting simplices into the canonical listing.
    /// Unordered complexes have each simplex sorted by vertex index.
    pub fn from_parts(
        vertices: Vec<IntVector>,
        mut simplices: Vec<Vec<usize>>,
        ordered: bool,
    ) -> Result<Self, ComplexError> {
        let nv = vertices.len();
        let n = vertices.first().map_or(0, IntVector::len);
        if let Some(v) = vertices.iter().find(|v| v.len() != n) {
            return Err(ComplexError::DimensionMismatch { expected: n, found: v.len() });
        }
        for s in simplices.iter_mut() {
            if s.is_empty() {
                return Err(ComplexError::Malformed("empty simplex".into()));
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= nv) {
                return Err(ComplexError::Malformed(format!("vertex index {bad} out of range")));
            }
            if !ordered {
                s.sort_unstable();
            }
            let distinct: HashSet<_> = s.iter().collect();
            if distinct.len() != s.len() {
                return Err(ComplexError::Malformed(format!("repeated vertex in {s:?}")));
            }
        }
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        simplices.dedup();
        Ok(FiniteComplex {
            family: None,
            n,
            box_bound: None,
            ordered,
            relative_to: None,
            vertices,
            simplices,
        })
    }

    pub fn empty(n: usize, ordered: bool) -> Self {
        FiniteComplex {
            family: None,
            n,
            box_bound: None,
            ordered,
            relative_to: None,
            vertices: Vec::new(),
            simplices: Vec::new(),
        }
    }

    pub fn vertices(&self) -> &[IntVector] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<usize>] {
        &self.simplices
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, or `-1` for the empty complex.
    pub fn dimension(&self) -> i64 {
        self.simplices.last().map_or(-1, |s| s.len() as i64 - 1)
    }

    pub fn simplices_of_dim(&self, d: usize) -> impl Iterator<Item = &Vec<usize>> {
        self.simplices.iter().filter(move |s| s.len() == d + 1)
    }

    /// Number of simplices in each dimension `0..=dim`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut f = vec![0; (self.dimension() + 1) as usize];
        for s in &self.simplices {
            f[s.len() - 1] += 1;
        }
        f
    }

    pub fn vertex_index(&self, v: &IntVector) -> Option<usize> {
        self.vertices.iter().position(|w| w == v)
    }

    /// Simplices as coordinate tuples.
    pub fn simplex_vectors(&self) -> impl Iterator<Item = Vec<IntVector>> + '_ {
        self.simplices.iter().map(|s| s.iter().map(|&i| self.vertices[i].clone()).collect())
    }

    pub fn contains_tuple(&self, tuple: &[IntVector]) -> bool {
        self.index_of_tuple(tuple).is_some()
    }

    pub(crate) fn index_of_tuple(&self, tuple: &[IntVector]) -> Option<Vec<usize>> {
        let mut idx = tuple.iter().map(|v| self.vertex_index(v)).collect::<Option<Vec<_>>>()?;
        if !self.ordered {
            idx.sort_unstable();
        }
        self.simplices.binary_search_by(|s| s.len().cmp(&idx.len()).then_with(|| s.as_slice().cmp(&idx))).ok()?;
        Some(idx)
    }

    /// Faces of every simplex are present.
    pub fn is_closed(&self) -> bool {
        let set: HashSet<&[usize]> = self.simplices.iter().map(Vec::as_slice).collect();
        self.simplices.iter().filter(|s| s.len() > 1).all(|s| {
            (0..s.len()).all(|i| {
                let mut f = s.clone();
                f.remove(i);
                set.contains(f.as_slice())
            })
        })
    }

    /// Cone with a new apex; vertices are embedded as `(v, 0)` and the apex is `(0, …, 0, 1)`.
    /// The apex comes last in every ordered simplex.
    pub fn cone(&self) -> FiniteComplex {
        let n = self.n;
        let mut vertices: Vec<IntVector> =
            self.vertices.iter().map(|v| v.concat(&IntVector::zero(1))).collect();
        vertices.push(IntVector::basis(n + 1, n + 1));
        let apex = self.vertices.len();
        let mut simplices = self.simplices.clone();
        simplices.push(vec![apex]);
        for s in &self.simplices {
            let mut t = s.clone();
            t.push(apex);
            simplices.push(t);
        }
        let mut c = FiniteComplex::from_parts(vertices, simplices, self.ordered).expect("valid cone");
        c.n = n + 1;
        c
    }

    pub fn to_file(&self) -> ComplexFile {
        ComplexFile {
            family: self.family,
            n: self.n,
            box_bound: self.box_bound,
            ordered: self.ordered,
            relative_to: self.relative_to.as_ref().map(|s| s.iter().map(to_i64).collect()),
            vertices: self.vertices.iter().map(to_i64).collect(),
            simplices: self.simplices.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("serialisable")
    }

    pub fn from_json(text: &str) -> Result<Self, ComplexError> {
        let file: ComplexFile =
            serde_json::from_str(text).map_err(|e| ComplexError::InvalidFile(e.to_string()))?;
        FiniteComplex::try_from(file)
    }
}

fn to_i64(v: &IntVector) -> Vec<i64> {
    v.to_i64().expect("complex coordinates fit in i64")
}

/// On-disk form of a complex. Vertices are plain JSON integers and are listed
/// lexicographically for complexes produced by [`build_complex`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    #[serde(default)]
    pub family: Option<Family>,
    pub n: usize,
    #[serde(rename = "box", default)]
    pub box_bound: Option<u32>,
    #[serde(default)]
    pub ordered: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub relative_to: Option<Vec<Vec<i64>>>,
    pub vertices: Vec<Vec<i64>>,
    pub simplices: Vec<Vec<usize>>,
}

impl TryFrom<ComplexFile> for FiniteComplex {
    type Error = ComplexError;
    fn try_from(file: ComplexFile) -> Result<Self, ComplexError> {
        if let Some(v) = file.vertices.iter().find(|v| v.len() != file.n) {
            return Err(ComplexError::DimensionMismatch { expected: file.n, found: v.len() });
        }
        let vertices: Vec<IntVector> = file.vertices.into_iter().map(IntVector::from).collect();
        let mut c = FiniteComplex::from_parts(vertices, file.simplices, file.ordered)?;
        c.n = file.n;
        c.family = file.family;
        c.box_bound = file.box_bound;
        c.relative_to = file.relative_to.map(|s| s.into_iter().map(IntVector::from).collect());
        Ok(c)
    }
}
