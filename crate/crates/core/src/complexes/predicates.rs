use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{ComplexError, Family};
use crate::lattice::{distinguished_vector, is_partial_basis, pairing_unchecked, FormedModule, IntVector};

/// `ρ(u) = {i : u_i odd}`, 1-based.
pub fn rho_set(u: &IntVector) -> Vec<usize> {
    u.odd_support()
}

fn check_len(n: usize, u: &IntVector) -> Result<(), ComplexError> {
    if u.len() != n {
        return Err(ComplexError::DimensionMismatch { expected: n, found: u.len() });
    }
    Ok(())
}

fn phi(u: &IntVector) -> BigInt {
    u.entries().iter().sum()
}

fn pair(u: &IntVector, v: &IntVector) -> BigInt {
    pairing_unchecked(u.entries(), v.entries())
}

/// Conditions on a single vector that do not involve the partial-basis test.
pub(crate) fn vertex_local(family: Family, u: &IntVector) -> bool {
    let odd = u.entries().iter().filter(|x| x.is_odd()).count();
    match family {
        Family::Z => true,
        Family::Y | Family::IX => odd == 2 && phi(u).is_zero(),
        Family::X | Family::WQ => odd == 1 && phi(u).is_one(),
    }
}

/// Conditions on an ordered pair `(u, v)` of distinct vertices, `u` first.
pub(crate) fn pair_local(family: Family, u: &IntVector, v: &IntVector) -> bool {
    let disjoint = u.entries().iter().zip(v.entries()).all(|(a, b)| !(a.is_odd() && b.is_odd()));
    if !disjoint {
        return false;
    }
    match family {
        Family::Z | Family::Y => true,
        Family::IX => pair(u, v).is_zero(),
        Family::X | Family::WQ => pair(u, v).is_one(),
    }
}

/// `{u_0, …, u_p, v_n} ∪ extra` is a partial basis.
pub(crate) fn extends_with_vn(n: usize, vectors: &[&IntVector], extra: &[IntVector]) -> bool {
    if n == 0 {
        return false;
    }
    let mut all: Vec<IntVector> = vectors.iter().map(|v| (*v).clone()).collect();
    all.extend(extra.iter().cloned());
    all.push(distinguished_vector(n).expect("n ≥ 1"));
    if all.len() > n {
        return false;
    }
    is_partial_basis(&all, &FormedModule::new(n)).expect("lengths checked")
}

/// Full 𝖰-basis test: a basis of ℤⁿ in canonical order whose alternating sum is `vₙ`.
pub(crate) fn is_full_q_basis(n: usize, tuple: &[&IntVector]) -> bool {
    if tuple.len() != n || n == 0 {
        return false;
    }
    let vn = distinguished_vector(n).expect("n ≥ 1");
    let mut alt = IntVector::zero(n);
    for (i, u) in tuple.iter().enumerate() {
        alt = if i % 2 == 0 { &alt + u } else { &alt - u };
    }
    if alt != vn {
        return false;
    }
    let vs: Vec<IntVector> = tuple.iter().map(|v| (*v).clone()).collect();
    is_partial_basis(&vs, &FormedModule::new(n)).expect("n vectors of length n")
}

pub fn vertex_predicate(family: Family, n: usize, u: &IntVector) -> Result<bool, ComplexError> {
    simplex_predicate(family, n, std::slice::from_ref(u))
}

/// All defining conditions of the family, checked exactly on the given tuple.
/// For the ordered families the tuple order matters.
pub fn simplex_predicate(family: Family, n: usize, tuple: &[IntVector]) -> Result<bool, ComplexError> {
    for u in tuple {
        check_len(n, u)?;
    }
    let refs: Vec<&IntVector> = tuple.iter().collect();
    Ok(simplex_ok(family, n, &refs, &[]))
}

pub(crate) fn simplex_ok(family: Family, n: usize, tuple: &[&IntVector], extra: &[IntVector]) -> bool {
    if tuple.is_empty() {
        return true;
    }
    for (i, u) in tuple.iter().enumerate() {
        if !vertex_local(family, u) {
            return false;
        }
        for v in &tuple[i + 1..] {
            if u == v || !pair_local(family, u, v) {
                return false;
            }
        }
    }
    if family == Family::WQ && tuple.len() == n && extra.is_empty() {
        return is_full_q_basis(n, tuple);
    }
    extends_with_vn(n, tuple, extra)
}

/// Which family of orbit conditions to test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OrbitKind {
    /// Tuples in the orbit of `(e_1, …, e_p)`.
    X,
    /// Sets in the orbit of `{e_1 − e_2, …, e_{2p−1} − e_{2p}}`.
    IX,
}

/// The four orbit conditions, each reported separately.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitReport {
    pub partial_basis_with_vn: bool,
    pub pairing: bool,
    pub rho: bool,
    pub phi: bool,
}

impl OrbitReport {
    pub fn holds(&self) -> bool {
        self.partial_basis_with_vn && self.pairing && self.rho && self.phi
    }
}

pub fn orbit_conditions(kind: OrbitKind, n: usize, tuple: &[IntVector]) -> Result<OrbitReport, ComplexError> {
    for u in tuple {
        check_len(n, u)?;
    }
    let p = tuple.len();
    let ok_size = match kind {
        OrbitKind::X => p < n,
        OrbitKind::IX => 2 * p < n,
    };
    if !ok_size {
        return Err(ComplexError::SizeBound { kind, size: p, n });
    }
    let refs: Vec<&IntVector> = tuple.iter().collect();
    let partial_basis_with_vn = extends_with_vn(n, &refs, &[]);
    let target_pair = match kind {
        OrbitKind::X => BigInt::one(),
        OrbitKind::IX => BigInt::zero(),
    };
    let pairing = (0..p).all(|i| (i + 1..p).all(|j| pair(&tuple[i], &tuple[j]) == target_pair));
    let rho_size = match kind {
        OrbitKind::X => 1,
        OrbitKind::IX => 2,
    };
    let mut seen = vec![false; n];
    let mut rho = true;
    for u in tuple {
        let r = rho_set(u);
        if r.len() != rho_size {
            rho = false;
        }
        for i in r {
            rho &= !std::mem::replace(&mut seen[i - 1], true);
        }
    }
    let target_phi = match kind {
        OrbitKind::X => BigInt::one(),
        OrbitKind::IX => BigInt::zero(),
    };
    let phi = tuple.iter().all(|u| self::phi(u) == target_phi);
    Ok(OrbitReport { partial_basis_with_vn, pairing, rho, phi })
}
