//! Inputs shared by the benchmarks in `benches/`.

use icl_core::{corpus, FiniteInverseSemigroup, PartialPerm, DEFAULT_CAP};

/// The full symmetric inverse monoid on `n` points.
pub fn symmetric_inverse_monoid(n: usize) -> FiniteInverseSemigroup {
    let mut gens = Vec::new();
    if n > 1 {
        gens.push(PartialPerm::from_pairs(n, &(1..=n).map(|i| (i, i % n + 1)).collect::<Vec<_>>()).unwrap());
        let mut swap: Vec<(usize, usize)> = vec![(1, 2), (2, 1)];
        swap.extend((3..=n).map(|i| (i, i)));
        gens.push(PartialPerm::from_pairs(n, &swap).unwrap());
    }
    gens.push(PartialPerm::from_pairs(n, &(2..=n).map(|i| (i, i)).collect::<Vec<_>>()).unwrap());
    FiniteInverseSemigroup::closure(&gens, DEFAULT_CAP).unwrap()
}

/// Corpus members small enough for the brute-force oracle.
pub fn oracle_inputs() -> Vec<(&'static str, FiniteInverseSemigroup)> {
    corpus::corpus()
        .into_iter()
        .filter(|(name, _)| matches!(*name, "chain5" | "I2" | "B2" | "clifford6"))
        .collect()
}
