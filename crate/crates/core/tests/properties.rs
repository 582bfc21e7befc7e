use num_bigint::BigUint;
use oddsp_core::burau::{burau_matrix, BraidWord};
use oddsp_core::complexes::{build_complex, orbit_conditions, simplex_predicate, Budget, ComplexSpec, Family, OrbitKind};
use oddsp_core::orbits::{reachability_search, standard_tuple};
use oddsp_core::weights::{decompose, sp_character, sp_shift, weyl_dim_sp, Partition, SignedPermutation};
use oddsp_core::{classify_element, FormedModule, IntMatrix, Level};
use proptest::prelude::*;

fn word_strategy(max_n: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    (2..=max_n).prop_flat_map(move |n| {
        let letter = (1..n as i64).prop_flat_map(|i| prop_oneof![Just(i), Just(-i)]);
        prop::collection::vec(letter, 0..=max_len).prop_map(move |w| BraidWord::new(n, &w).unwrap())
    })
}

fn partition_strategy(max_size: u32) -> impl Strategy<Value = Partition> {
    (0..=max_size).prop_flat_map(|k| {
        let all = Partition::all_of_size(k);
        (0..all.len()).prop_map(move |i| all[i].clone())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn burau_is_multiplicative(w in word_strategy(6, 8), extra in prop::collection::vec(any::<bool>(), 0..6)) {
        let n = w.strands();
        let tail: Vec<i64> = extra.iter().enumerate().map(|(k, &s)| {
            let i = (k % (n - 1)) as i64 + 1;
            if s { i } else { -i }
        }).collect();
        let v = BraidWord::new(n, &tail).unwrap();
        let product = &burau_matrix(&w) * &burau_matrix(&v);
        prop_assert_eq!(burau_matrix(&w.concat(&v).unwrap()), product);
    }

    #[test]
    fn burau_inverse_word(w in word_strategy(6, 10)) {
        let n = w.strands();
        let m = &burau_matrix(&w) * &burau_matrix(&w.inverse());
        prop_assert_eq!(m, IntMatrix::identity(n));
    }

    #[test]
    fn burau_images_lie_in_q(w in word_strategy(7, 12)) {
        let m = burau_matrix(&w);
        let level = classify_element(&m).unwrap().level();
        prop_assert!(level.is_some_and(|l| l >= Level::Q));
        let vn = FormedModule::new(w.strands()).distinguished_vector();
        prop_assert_eq!(m.apply(&vn).unwrap(), vn);
        prop_assert_eq!(m.mod2(), w.permutation_matrix());
    }

    #[test]
    fn character_dimension_matches_weyl(lambda in partition_strategy(4), n in 1usize..=3) {
        prop_assume!(lambda.length() <= n);
        let chi = sp_character(&lambda, n).unwrap();
        prop_assert_eq!(BigUint::from(chi.dimension() as u64), weyl_dim_sp(&lambda, n));
        let d = decompose(&chi).unwrap();
        prop_assert_eq!(d.len(), 1);
        prop_assert_eq!(d.get(&lambda), Some(&1));
    }

    #[test]
    fn tensor_products_decompose_consistently(a in partition_strategy(2), b in partition_strategy(2), n in 2usize..=3) {
        prop_assume!(a.length() <= n && b.length() <= n);
        let chi = sp_character(&a, n).unwrap().tensor(&sp_character(&b, n).unwrap());
        let d = decompose(&chi).unwrap();
        let total: BigUint = d.iter().map(|(mu, &k)| weyl_dim_sp(mu, n) * BigUint::from(k)).sum();
        prop_assert_eq!(total, weyl_dim_sp(&a, n) * weyl_dim_sp(&b, n));
    }

    #[test]
    fn branching_restricts_characters(lambda in partition_strategy(3), n in 1usize..=3) {
        prop_assume!(lambda.length() <= n + 1);
        let restricted = sp_character(&lambda, n + 1).unwrap().restrict_last().unwrap();
        let d = decompose(&restricted).unwrap();
        let expected: std::collections::BTreeMap<Partition, u128> = sp_shift(&lambda)
            .into_iter()
            .filter(|(mu, _)| mu.length() <= n)
            .map(|(mu, k)| (mu, k as u128))
            .collect();
        prop_assert_eq!(d, expected);
    }

    #[test]
    fn signed_permutation_length_is_inverse_invariant(seed in 0usize..384) {
        let all = SignedPermutation::all(4);
        let w = &all[seed % all.len()];
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert_eq!(w.sign(), w.inverse().sign());
    }
}

#[test]
fn planted_words_are_recovered() {
    // Short random words carry the standard tuple somewhere; the search must find a word doing the same.
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(99);
    for trial in 0..100 {
        let n = rng.gen_range(3..=5);
        let kind = if n >= 5 && trial % 2 == 0 { OrbitKind::IX } else { OrbitKind::X };
        let p = 0;
        let len = rng.gen_range(0..=4);
        let letters: Vec<i64> = (0..len)
            .map(|_| {
                let i = rng.gen_range(1..n as i64);
                if rng.gen_bool(0.5) { i } else { -i }
            })
            .collect();
        let m = burau_matrix(&BraidWord::new(n, &letters).unwrap());
        let target: Vec<_> = standard_tuple(kind, n, p).unwrap().iter().map(|v| m.apply(v).unwrap()).collect();
        assert!(orbit_conditions(kind, n, &target).unwrap().holds());
        let found = reachability_search(kind, n, &target, 4).unwrap();
        assert!(found.found, "trial {trial}: {letters:?} at n={n}");
        assert!(found.depth.unwrap() <= len);
    }
}

#[test]
fn built_simplices_satisfy_their_predicate() {
    for (family, n, b) in [(Family::Z, 3, 1), (Family::Y, 4, 1), (Family::IX, 4, 1), (Family::X, 4, 1), (Family::WQ, 3, 1)] {
        let c = build_complex(&ComplexSpec::new(family, n, b), &Budget::default()).unwrap();
        assert!(c.is_closed(), "{family} n={n}");
        for t in c.simplex_vectors() {
            assert!(simplex_predicate(family, n, &t).unwrap(), "{family} n={n}: {t:?}");
        }
    }
}

#[test]
fn families_nest() {
    let n = 4;
    let get = |f| build_complex(&ComplexSpec::new(f, n, 1), &Budget::default()).unwrap();
    let (z, y, ix) = (get(Family::Z), get(Family::Y), get(Family::IX));
    for t in ix.simplex_vectors() {
        assert!(y.contains_tuple(&t));
    }
    for t in y.simplex_vectors() {
        assert!(z.contains_tuple(&t));
    }
    let (x, wq) = (get(Family::X), get(Family::WQ));
    for t in x.simplex_vectors() {
        assert!(wq.contains_tuple(&t));
    }
}
