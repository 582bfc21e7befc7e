use std::collections::BTreeMap;

use super::Partition;

/// Partitions with multiplicities.
pub type ShiftMultiset = BTreeMap<Partition, usize>;

/// All `μ ⊆ λ` with `λ/μ` a horizontal strip, i.e. `λ_{i+1} ≤ μ_i ≤ λ_i`.
pub fn pieri_shift(lambda: &Partition) -> ShiftMultiset {
    let mut out = ShiftMultiset::new();
    for mu in horizontal_strips(lambda) {
        *out.entry(mu).or_insert(0) += 1;
    }
    out
}

fn horizontal_strips(lambda: &Partition) -> Vec<Partition> {
    let l = lambda.length();
    let mut acc: Vec<Vec<u32>> = vec![Vec::with_capacity(l)];
    for i in 0..l {
        let (lo, hi) = (lambda.part(i + 1), lambda.part(i));
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                (lo..=hi).map(move |m| {
                    let mut p = prefix.clone();
                    p.push(m);
                    p
                })
            })
            .collect();
    }
    acc.into_iter().map(|p| Partition::new(p).expect("interlacing parts decrease")).collect()
}

/// The Pieri shift applied twice, as a multiset.
pub fn sp_shift(lambda: &Partition) -> ShiftMultiset {
    let mut out = ShiftMultiset::new();
    for (mu, a) in pieri_shift(lambda) {
        for (nu, b) in pieri_shift(&mu) {
            *out.entry(nu).or_insert(0) += a * b;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: &[u32]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn pieri_examples() {
        let s = pieri_shift(&p(&[2, 1]));
        let keys: Vec<_> = s.keys().cloned().collect();
        assert_eq!(keys, vec![p(&[1]), p(&[1, 1]), p(&[2]), p(&[2, 1])]);
        assert!(s.values().all(|&m| m == 1));
        assert_eq!(pieri_shift(&p(&[])).into_iter().collect::<Vec<_>>(), vec![(p(&[]), 1)]);
        assert_eq!(pieri_shift(&p(&[1])).into_iter().collect::<Vec<_>>(), vec![(p(&[]), 1), (p(&[1]), 1)]);
    }

    #[test]
    fn sp_shift_examples() {
        assert_eq!(sp_shift(&p(&[])).into_iter().collect::<Vec<_>>(), vec![(p(&[]), 1)]);
        assert_eq!(sp_shift(&p(&[1])).into_iter().collect::<Vec<_>>(), vec![(p(&[]), 2), (p(&[1]), 1)]);
    }

    #[test]
    fn strips_counted_by_product_formula() {
        // Choices for μ_i are independent: Π (λ_i − λ_{i+1} + 1).
        for lambda in Partition::all_up_to(7) {
            let expect: usize = (0..lambda.length()).map(|i| (lambda.part(i) - lambda.part(i + 1) + 1) as usize).product();
            assert_eq!(pieri_shift(&lambda).len(), expect, "{lambda}");
        }
    }

    #[test]
    fn strips_have_one_box_per_column() {
        for lambda in Partition::all_up_to(6) {
            for mu in pieri_shift(&lambda).keys() {
                // Column c of λ/μ holds conj(λ)_c − conj(μ)_c boxes.
                for c in 0..lambda.part(0) {
                    let col = |q: &Partition| q.parts().iter().filter(|&&x| x > c).count();
                    assert!(col(&lambda) - col(mu) <= 1, "{lambda} / {mu}");
                }
            }
        }
    }
}
