//! Shared inputs for the criterion benchmarks.

use oddsp_core::burau::BraidWord;
use oddsp_core::complexes::{build_complex, Budget, ComplexSpec, Family, FiniteComplex};

/// A deterministic word of the given length cycling through all generators.
pub fn cycling_word(n: usize, len: usize) -> BraidWord {
    let letters: Vec<i64> = (0..len)
        .map(|k| {
            let i = (k % (n - 1)) as i64 + 1;
            if k % 3 == 2 { -i } else { i }
        })
        .collect();
    BraidWord::new(n, &letters).expect("indices lie in 1..n")
}

pub fn built(family: Family, n: usize, box_bound: u32) -> FiniteComplex {
    build_complex(&ComplexSpec::new(family, n, box_bound), &Budget::default()).expect("small builds fit the default budget")
}
