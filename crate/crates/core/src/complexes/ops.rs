use std::collections::{HashMap, HashSet};

use num_bigint::BigInt;
use thiserror::Error;

use super::{simplex_predicate, ComplexError, Family, FiniteComplex};
use crate::lattice::{pairing_unchecked, IntVector};

/// `b_{i,1}^{-1}(u_0, …, u_p) = (w, u_0, …, û_i, …, u_p)` with
/// `w = 2u_0 − 2u_1 + … ± 2u_{i−1} ∓ u_i`, for `1 ≤ i ≤ p`.
pub fn braid_shift(tuple: &[IntVector], i: usize) -> Result<Vec<IntVector>, ComplexError> {
    if i == 0 || i >= tuple.len() {
        return Err(ComplexError::Malformed(format!("shift index {i} out of range for a {}-tuple", tuple.len())));
    }
    let n = tuple[0].len();
    let mut w = IntVector::zero(n);
    for (k, u) in tuple[..i].iter().enumerate() {
        let c = BigInt::from(if k % 2 == 0 { 2 } else { -2 });
        w = &w + &u.scale(&c);
    }
    w = if i % 2 == 0 { &w + &tuple[i] } else { &w - &tuple[i] };
    let mut out = Vec::with_capacity(tuple.len());
    out.push(w);
    out.extend(tuple.iter().enumerate().filter(|&(k, _)| k != i).map(|(_, u)| u.clone()));
    Ok(out)
}

/// Faces `d_0, …, d_p` of a simplex of `W(𝖰, n)`: `d_0` drops the first entry
/// and `d_i = d_0 ∘ b_{i,1}^{-1}`.
pub fn destab_faces(n: usize, tuple: &[IntVector]) -> Result<Vec<Vec<IntVector>>, ComplexError> {
    if tuple.is_empty() {
        return Err(ComplexError::Malformed("empty simplex has no faces".into()));
    }
    if !simplex_predicate(Family::WQ, n, tuple)? {
        return Err(ComplexError::Malformed("not a partial Q-basis in canonical order".into()));
    }
    let mut faces = Vec::with_capacity(tuple.len());
    faces.push(tuple[1..].to_vec());
    for i in 1..tuple.len() {
        let shifted = braid_shift(tuple, i)?;
        faces.push(shifted[1..].to_vec());
    }
    Ok(faces)
}

/// Number of orderings of the set with `⟨u_i, u_j⟩ = 1` for all `i < j`.
pub fn canonical_orders(vectors: &[IntVector]) -> usize {
    fn go(vs: &[IntVector], used: &mut Vec<bool>, chosen: &mut Vec<usize>) -> usize {
        if chosen.len() == vs.len() {
            return 1;
        }
        let mut total = 0;
        for c in 0..vs.len() {
            if used[c] {
                continue;
            }
            let ok = chosen.iter().all(|&a| pairing_unchecked(vs[a].entries(), vs[c].entries()) == BigInt::from(1));
            if ok {
                used[c] = true;
                chosen.push(c);
                total += go(vs, used, chosen);
                chosen.pop();
                used[c] = false;
            }
        }
        total
    }
    go(vectors, &mut vec![false; vectors.len()], &mut Vec::new())
}

/// Restricts to the simplices listed, reindexing vertices in their original order.
fn subcomplex(c: &FiniteComplex, simplices: Vec<Vec<usize>>) -> FiniteComplex {
    let used: Vec<usize> = {
        let mut u: Vec<usize> = simplices.iter().flatten().copied().collect::<HashSet<_>>().into_iter().collect();
        u.sort_unstable();
        u
    };
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let vertices = used.iter().map(|&i| c.vertices()[i].clone()).collect();
    let simplices = simplices.into_iter().map(|s| s.into_iter().map(|i| remap[&i]).collect()).collect();
    let mut out = FiniteComplex::from_parts(vertices, simplices, c.ordered).expect("subcomplex of a valid complex");
    out.n = c.n;
    out.box_bound = c.box_bound;
    out
}

/// Left-link for directed complexes (`τ` with `τ·σ` a simplex); the ordinary
/// link for unordered ones.
pub fn left_link(c: &FiniteComplex, sigma: &[IntVector]) -> Result<FiniteComplex, ComplexError> {
    let idx = c.index_of_tuple(sigma).ok_or(ComplexError::SimplexAbsent)?;
    let k = idx.len();
    let taus: Vec<Vec<usize>> = if c.ordered {
        c.simplices()
            .iter()
            .filter(|s| s.len() > k && s[s.len() - k..] == idx[..])
            .map(|s| s[..s.len() - k].to_vec())
            .collect()
    } else {
        let sig: HashSet<usize> = idx.iter().copied().collect();
        c.simplices()
            .iter()
            .filter(|s| s.len() > k && sig.iter().all(|v| s.contains(v)))
            .map(|s| s.iter().copied().filter(|v| !sig.contains(v)).collect())
            .collect()
    };
    Ok(subcomplex(c, taus))
}

/// `W⟨S⟩`: vertices `(w, s)` written as the concatenation `w ‖ s`; a tuple is a
/// simplex iff its first coordinates form one.
pub fn bracket(c: &FiniteComplex, labels: &[IntVector]) -> FiniteComplex {
    let ns = labels.len();
    let vertices: Vec<IntVector> =
        c.vertices().iter().flat_map(|w| labels.iter().map(move |s| w.concat(s))).collect();
    let mut simplices = Vec::new();
    for s in c.simplices() {
        let total = ns.pow(s.len() as u32);
        for mut code in 0..total {
            let mut t = Vec::with_capacity(s.len());
            for &w in s {
                t.push(w * ns + code % ns);
                code /= ns;
            }
            simplices.push(t);
        }
    }
    let mut out = FiniteComplex::from_parts(vertices, simplices, c.ordered).expect("bracket of a valid complex");
    out.n = c.n + labels.first().map_or(0, IntVector::len);
    out.box_bound = c.box_bound;
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IsomorphismError {
    #[error("one complex is ordered and the other is not")]
    OrderingMismatch,
    #[error("vertex {0} is not sent to a vertex")]
    NotAVertex(IntVector),
    #[error("vertex map is not injective")]
    NotInjective,
    #[error("vertex map misses {0} target vertices")]
    NotSurjective(usize),
    #[error("simplex {0:?} has no counterpart")]
    SimplexMismatch(Vec<IntVector>),
    #[error("simplex counts differ: {0} vs {1}")]
    CountMismatch(usize, usize),
}

/// Checks that `f` is a bijection on vertices that carries the simplices of
/// `a` exactly onto those of `b`, respecting order for directed complexes.
pub fn check_vertex_isomorphism(
    a: &FiniteComplex,
    b: &FiniteComplex,
    f: impl Fn(&IntVector) -> IntVector,
) -> Result<(), IsomorphismError> {
    if a.ordered != b.ordered {
        return Err(IsomorphismError::OrderingMismatch);
    }
    let target: HashMap<&IntVector, usize> = b.vertices().iter().enumerate().map(|(i, v)| (v, i)).collect();
    let mut image = Vec::with_capacity(a.vertices().len());
    let mut hit = vec![false; b.vertices().len()];
    for v in a.vertices() {
        let j = *target.get(&f(v)).ok_or_else(|| IsomorphismError::NotAVertex(v.clone()))?;
        if std::mem::replace(&mut hit[j], true) {
            return Err(IsomorphismError::NotInjective);
        }
        image.push(j);
    }
    let missed = hit.iter().filter(|h| !**h).count();
    if missed > 0 {
        return Err(IsomorphismError::NotSurjective(missed));
    }
    if a.simplices().len() != b.simplices().len() {
        return Err(IsomorphismError::CountMismatch(a.simplices().len(), b.simplices().len()));
    }
    let bs: HashSet<&[usize]> = b.simplices().iter().map(Vec::as_slice).collect();
    for s in a.simplices() {
        let mut t: Vec<usize> = s.iter().map(|&i| image[i]).collect();
        if !a.ordered {
            t.sort_unstable();
        }
        if !bs.contains(t.as_slice()) {
            return Err(IsomorphismError::SimplexMismatch(s.iter().map(|&i| a.vertices()[i].clone()).collect()));
        }
    }
    Ok(())
}
