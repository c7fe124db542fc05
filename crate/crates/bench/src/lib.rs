//! Fixtures shared by the benchmarks in `benches/`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ueb_core::{Cyclotomic, ExactMatrix, PhasedScalar, Rational};

/// A dense `n x n` matrix of seeded random cyclotomic entries of order `order`.
pub fn random_matrix(n: usize, order: u32, seed: u64) -> ExactMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n * n).map(|_| PhasedScalar::from(random_cyclotomic(&mut rng, order))).collect();
    ExactMatrix::from_entries(n, n, entries)
}

pub fn random_cyclotomic(rng: &mut ChaCha8Rng, order: u32) -> Cyclotomic {
    let terms: Vec<(i64, Rational)> = (0..4)
        .map(|_| {
            let r = Rational::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=6).into());
            (rng.gen_range(0..order as i64), r)
        })
        .collect();
    Cyclotomic::from_terms(order, terms.iter().map(|(k, r)| (*k, r)))
}
