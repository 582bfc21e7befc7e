use serde::{Deserialize, Serialize};

use super::{rho, SignedPermutation, Weight, WeightsError};

/// `w • λ = w(λ + ρ) − ρ`.
pub fn dot_action(w: &SignedPermutation, lambda: &Weight) -> Result<Weight, WeightsError> {
    let r = rho(w.rank())?;
    lambda.check_len(w.rank())?;
    Ok(w.act_unchecked(&lambda.add(&r)).sub(&r))
}

/// A minimal-length representative of `W/W_P`, where `W_P` fixes the first coordinate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CosetRep {
    pub w: SignedPermutation,
    pub length: usize,
    /// `w⁻¹(ρ)`: first entry arbitrary, the rest positive and decreasing.
    pub inverse_rho: Weight,
}

/// The `2n` representatives, sorted by length.
pub fn coset_reps_wp(n: usize) -> Result<Vec<CosetRep>, WeightsError> {
    let r = rho(n)?;
    let mut reps = Vec::with_capacity(2 * n);
    for first in (1..=n as i64).flat_map(|t| [t, -t]) {
        let mut target = vec![first];
        target.extend((1..=n as i64).rev().filter(|&x| x != first.abs()));
        // u = w⁻¹ sends ρ to target: ρ_j = n+1−j lands in the slot holding ±ρ_j.
        let mut images = vec![0; n];
        for (k, &y) in target.iter().enumerate() {
            let j = n as i64 + 1 - y.abs();
            images[(j - 1) as usize] = y.signum() * (k as i64 + 1);
        }
        let u = SignedPermutation::new(images).expect("target is a signed rearrangement of ρ");
        debug_assert_eq!(u.act_unchecked(&r).0, target);
        let w = u.inverse();
        reps.push(CosetRep { length: w.length(), w, inverse_rho: Weight(target) });
    }
    reps.sort_by_key(|c| c.length);
    Ok(reps)
}

/// One summand `V_𝔩(w⁻¹•λ)` in homological degree `ℓ(w)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KostantRow {
    pub w: SignedPermutation,
    pub degree: usize,
    pub inverse_rho: Weight,
    /// The full weight `w⁻¹•λ`.
    pub dot_weight: Weight,
    /// `w⁻¹•λ` with its first entry deleted, a dominant weight of Sp₂ₙ₋₂.
    pub levi_weight: Weight,
}

/// Homology of the nilradical of the vector-stabiliser parabolic with
/// coefficients in `V(λ)`, one row per element of `W^P`.
pub fn kostant_cohomology(lambda: &Weight) -> Result<Vec<KostantRow>, WeightsError> {
    if !lambda.is_dominant() {
        return Err(WeightsError::NonDominant(lambda.clone()));
    }
    let n = lambda.len();
    let rows = coset_reps_wp(n)?
        .into_iter()
        .map(|c| {
            let dot_weight = dot_action(&c.w.inverse(), lambda).expect("lengths agree");
            let levi_weight = Weight(dot_weight.0[1..].to_vec());
            debug_assert!(levi_weight.is_dominant());
            KostantRow { w: c.w, degree: c.length, inverse_rho: c.inverse_rho, dot_weight, levi_weight }
        })
        .collect();
    Ok(rows)
}

/// Degrees in which the Kostant homology contains the trivial Levi representation.
pub fn trivial_summand_degrees(lambda: &Weight) -> Result<Vec<usize>, WeightsError> {
    if !lambda.is_dominant() {
        return Err(WeightsError::NonDominant(lambda.clone()));
    }
    let n = lambda.len();
    if n == 0 {
        return Err(WeightsError::ZeroRank);
    }
    let length = lambda.0.iter().filter(|&&x| x != 0).count();
    Ok(if length <= 1 { vec![0, 2 * n - 1] } else { Vec::new() })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::weights::Partition;

    fn w(v: &[i64]) -> Weight {
        Weight(v.to_vec())
    }

    #[test]
    fn dot_action_identity_and_errors() {
        let l = w(&[3, 1, 0]);
        assert_eq!(dot_action(&SignedPermutation::identity(3), &l).unwrap(), l);
        assert!(dot_action(&SignedPermutation::identity(2), &l).is_err());
    }

    #[test]
    fn dot_action_composes() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let all = SignedPermutation::all(4);
        for _ in 0..100 {
            let a = &all[rng.gen_range(0..all.len())];
            let b = &all[rng.gen_range(0..all.len())];
            let l = Weight((0..4).map(|_| rng.gen_range(-5..=5)).collect());
            let lhs = dot_action(a, &dot_action(b, &l).unwrap()).unwrap();
            assert_eq!(lhs, dot_action(&a.compose(b), &l).unwrap());
        }
    }

    #[test]
    fn rank_five_example() {
        let reps = coset_reps_wp(5).unwrap();
        let c = reps.iter().find(|c| c.inverse_rho.0[0] == -3).unwrap();
        assert_eq!(c.inverse_rho, w(&[-3, 5, 4, 2, 1]));
        // The dot action is affine, so checking a basis of λ plus zero pins it down.
        let cases = [
            (w(&[0, 0, 0, 0, 0]), w(&[-8, 1, 1, 0, 0])),
            (w(&[9, 7, 4, 2, 1]), w(&[-12, 10, 8, 2, 1])),
            (w(&[5, 5, 5, 5, 5]), w(&[-13, 6, 6, 5, 5])),
            (w(&[3, 0, 0, 0, 0]), w(&[-8, 4, 1, 0, 0])),
        ];
        for (l, expect) in cases {
            assert_eq!(dot_action(&c.w.inverse(), &l).unwrap(), expect);
            let rows = kostant_cohomology(&l).unwrap();
            let row = rows.iter().find(|r| r.w == c.w).unwrap();
            let lv = &l.0;
            assert_eq!(row.levi_weight, w(&[1 + lv[0], 1 + lv[1], lv[3], lv[4]]));
        }
    }

    #[test]
    fn rank_two_table() {
        let reps = coset_reps_wp(2).unwrap();
        assert_eq!(reps.iter().map(|c| c.length).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!(reps[3].inverse_rho, w(&[-2, 1]));
        let rows = kostant_cohomology(&w(&[0, 0])).unwrap();
        let table: Vec<(usize, Weight)> = rows.iter().map(|r| (r.degree, r.levi_weight.clone())).collect();
        assert_eq!(table, vec![(0, w(&[0])), (1, w(&[1])), (2, w(&[1])), (3, w(&[0]))]);
        assert_eq!(trivial_summand_degrees(&w(&[0, 0])).unwrap(), vec![0, 3]);
    }

    #[test]
    fn lengths_are_zero_to_2n_minus_one() {
        for n in 1..=7 {
            let reps = coset_reps_wp(n).unwrap();
            assert_eq!(reps.len(), 2 * n);
            assert_eq!(reps.iter().map(|c| c.length).collect::<Vec<_>>(), (0..2 * n).collect::<Vec<_>>());
            assert!(reps[0].w.is_identity());
            assert_eq!(reps[2 * n - 1].w, SignedPermutation::first_sign_flip(n));
        }
    }

    #[test]
    fn reps_are_minimal_in_their_cosets() {
        // Cosets wW_P are determined by w(e_1).
        for n in 1..=4 {
            let mut best: BTreeMap<i64, (usize, Vec<SignedPermutation>)> = BTreeMap::new();
            for g in SignedPermutation::all(n) {
                let key = g.images()[0];
                let l = g.length();
                let e = best.entry(key).or_insert((usize::MAX, Vec::new()));
                if l < e.0 {
                    *e = (l, vec![g]);
                } else if l == e.0 {
                    e.1.push(g);
                }
            }
            let reps = coset_reps_wp(n).unwrap();
            assert_eq!(best.len(), reps.len());
            for c in &reps {
                let (l, ws) = &best[&c.w.images()[0]];
                assert_eq!(ws.len(), 1, "unique minimal element");
                assert_eq!((*l, &ws[0]), (c.length, &c.w));
            }
        }
    }

    #[test]
    fn levi_weights_dominant_and_trivial_scan() {
        for n in 1..=5 {
            for p in Partition::all_up_to(5) {
                let Ok(l) = p.to_weight(n) else { continue };
                let rows = kostant_cohomology(&l).unwrap();
                assert_eq!(rows.len(), 2 * n);
                assert!(rows.iter().all(|r| r.levi_weight.is_dominant()), "{p} {n}");
                let scanned: Vec<usize> =
                    rows.iter().filter(|r| r.levi_weight.0.iter().all(|&x| x == 0)).map(|r| r.degree).collect();
                assert_eq!(scanned, trivial_summand_degrees(&l).unwrap(), "{p} {n}");
            }
        }
    }

    #[test]
    fn trivial_degrees_examples() {
        assert_eq!(trivial_summand_degrees(&w(&[3, 0, 0, 0])).unwrap(), vec![0, 7]);
        for n in 2..=5 {
            let l = Partition::new(vec![1, 1]).unwrap().to_weight(n).unwrap();
            assert!(trivial_summand_degrees(&l).unwrap().is_empty());
        }
        assert!(kostant_cohomology(&w(&[0, 1])).is_err());
    }
}
