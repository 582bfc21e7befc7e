use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};

use num_integer::Integer;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::predicates::{extends_with_vn, is_full_q_basis, pair_local, simplex_ok, vertex_local};
use super::{ComplexError, ComplexSpec, Family, FiniteComplex};
use crate::lattice::{pairing_unchecked, IntVector};

/// Resource limits for [`build_complex`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Upper bound on `(2b+1)ⁿ`, the number of box vectors scanned.
    pub max_candidates: usize,
    pub max_vertices: usize,
    pub max_simplices: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: 20_000_000, max_vertices: 50_000, max_simplices: 2_000_000 }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildStats {
    pub candidates: usize,
    pub vertices: usize,
    pub simplices: usize,
}

impl fmt::Display for BuildStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} candidates, {} vertices, {} simplices", self.candidates, self.vertices, self.simplices)
    }
}

fn decode(mut k: usize, n: usize, b: i64) -> IntVector {
    let base = (2 * b + 1) as usize;
    let mut digits = vec![0i64; n];
    for d in digits.iter_mut().rev() {
        *d = (k % base) as i64 - b;
        k /= base;
    }
    IntVector::from(digits)
}

/// Enumerates the truncation of the requested complex to `[−b, b]ⁿ`.
///
/// Vertices are listed lexicographically. Simplices are grown one vertex at a
/// time through the cheap parity and pairing conditions; the partial-basis test
/// runs only on tuples that survive them.
pub fn build_complex(spec: &ComplexSpec, budget: &Budget) -> Result<FiniteComplex, ComplexError> {
    let n = spec.n;
    let family = spec.family;
    let sigma: Vec<IntVector> = spec.relative_to.clone().unwrap_or_default();
    for s in &sigma {
        if s.len() != n {
            return Err(ComplexError::DimensionMismatch { expected: n, found: s.len() });
        }
    }
    if !sigma.is_empty() {
        let refs: Vec<&IntVector> = sigma.iter().collect();
        if !simplex_ok(Family::Z, n, &refs, &[]) {
            return Err(ComplexError::InvalidRelativeSimplex { n });
        }
    }

    let mut stats = BuildStats::default();
    let finish = |vertices: Vec<IntVector>, simplices: Vec<Vec<usize>>| {
        let mut c = FiniteComplex::from_parts(vertices, simplices, family.is_ordered())
            .expect("enumeration yields well-formed simplices");
        c.n = n;
        c.family = Some(family);
        c.box_bound = Some(spec.box_bound);
        c.relative_to = spec.relative_to.clone();
        c
    };
    if n == 0 {
        return Ok(finish(Vec::new(), Vec::new()));
    }

    let b = i64::from(spec.box_bound);
    let candidates = (2 * b as usize + 1)
        .checked_pow(n as u32)
        .filter(|&c| c <= budget.max_candidates)
        .ok_or(ComplexError::BudgetExceeded {
            what: "box vectors",
            limit: budget.max_candidates,
            stats: stats.clone(),
        })?;
    stats.candidates = candidates;

    let vertices: Vec<IntVector> = (0..candidates)
        .into_par_iter()
        .filter_map(|k| {
            let x = decode(k, n, b);
            vertex_ok(family, n, &x, &sigma).then_some(x)
        })
        .collect();
    stats.vertices = vertices.len();
    if vertices.len() > budget.max_vertices {
        return Err(ComplexError::BudgetExceeded {
            what: "vertices",
            limit: budget.max_vertices,
            stats,
        });
    }

    let ordered = family.is_ordered();
    let out: Vec<Vec<usize>> = (0..vertices.len())
        .into_par_iter()
        .map(|a| {
            let range = if ordered { 0 } else { a + 1 };
            (range..vertices.len())
                .filter(|&c| c != a && pair_local(family, &vertices[a], &vertices[c]))
                .collect()
        })
        .collect();

    let count = AtomicUsize::new(vertices.len());
    let overflow = AtomicBool::new(false);
    let higher: Vec<Vec<usize>> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|a| {
            let mut found = Vec::new();
            let mut tuple = vec![a];
            let ctx = Ctx { family, n, vertices: &vertices, sigma: &sigma, out: &out, count: &count, overflow: &overflow, limit: budget.max_simplices };
            ctx.extend(&mut tuple, &out[a], &mut found);
            found
        })
        .collect();
    stats.simplices = count.load(Ordering::Relaxed);
    if overflow.load(Ordering::Relaxed) {
        return Err(ComplexError::BudgetExceeded {
            what: "simplices",
            limit: budget.max_simplices,
            stats,
        });
    }

    let mut simplices: Vec<Vec<usize>> = (0..vertices.len()).map(|i| vec![i]).collect();
    simplices.extend(higher);
    Ok(finish(vertices, simplices))
}

fn vertex_ok(family: Family, n: usize, x: &IntVector, sigma: &[IntVector]) -> bool {
    if !vertex_local(family, x) {
        return false;
    }
    for s in sigma {
        if s == x || !pairing_unchecked(x.entries(), s.entries()).is_zero() {
            return false;
        }
        if x.entries().iter().zip(s.entries()).any(|(a, c)| a.is_odd() && c.is_odd()) {
            return false;
        }
    }
    simplex_ok(family, n, &[x], sigma)
}

struct Ctx<'a> {
    family: Family,
    n: usize,
    vertices: &'a [IntVector],
    sigma: &'a [IntVector],
    out: &'a [Vec<usize>],
    count: &'a AtomicUsize,
    overflow: &'a AtomicBool,
    limit: usize,
}

impl Ctx<'_> {
    fn closes(&self, tuple: &[usize]) -> bool {
        let refs: Vec<&IntVector> = tuple.iter().map(|&i| &self.vertices[i]).collect();
        if self.family == Family::WQ && tuple.len() == self.n && self.sigma.is_empty() {
            return is_full_q_basis(self.n, &refs);
        }
        extends_with_vn(self.n, &refs, self.sigma)
    }

    fn extend(&self, tuple: &mut Vec<usize>, cands: &[usize], found: &mut Vec<Vec<usize>>) {
        if tuple.len() >= self.n || self.overflow.load(Ordering::Relaxed) {
            return;
        }
        for &c in cands {
            tuple.push(c);
            if self.closes(tuple) {
                if self.count.fetch_add(1, Ordering::Relaxed) >= self.limit {
                    self.overflow.store(true, Ordering::Relaxed);
                    tuple.pop();
                    return;
                }
                found.push(tuple.clone());
                let next = intersect(cands, &self.out[c]);
                self.extend(tuple, &next, found);
            }
            tuple.pop();
        }
    }
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
