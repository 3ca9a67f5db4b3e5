#![allow(dead_code)]

use std::collections::BTreeSet;

use prunres::determinantal::{is_ideal_zero, SparsePattern};
use prunres::monomial::MonomialIdeal;
use prunres::ring::{Field, Monomial, Ring};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FIELDS: [Field; 3] = [Field::Rational, Field::Prime(32003), Field::Prime(101)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One pattern per orbit of zero masks under row and column permutations,
/// keeping those without a zero column and with a nonzero ideal.
pub fn sweep_patterns(k: usize, n: usize) -> Vec<SparsePattern> {
    let mut seen = BTreeSet::new();
    SparsePattern::all_masks(k, n)
        .filter(|p| !p.has_zero_column() && !is_ideal_zero(p))
        .filter(|p| seen.insert(p.canonical_mask()))
        .collect()
}

/// Seeded random patterns without a zero column and with a nonzero ideal.
pub fn random_patterns(
    k: usize,
    n: usize,
    count: usize,
    density: f64,
    seed: u64,
) -> Vec<SparsePattern> {
    let mut rng = rng(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let p = SparsePattern::random(k, n, density, &mut rng).unwrap();
        if !p.has_zero_column() && !is_ideal_zero(&p) {
            out.push(p);
        }
    }
    out
}

/// A random monomial ideal with at most `max_gens` generators in at most
/// `max_vars` variables. Each exponent is 0 with probability 0.55 and
/// otherwise 1 or 2.
pub fn random_monomial_ideal<R: Rng>(
    rng: &mut R,
    max_gens: usize,
    max_vars: usize,
) -> MonomialIdeal {
    let nvars = rng.gen_range(max_vars.min(2)..=max_vars);
    let names: Vec<String> = (0..nvars).map(|i| format!("x{}", i + 1)).collect();
    let ring = Ring::new(names, Field::default()).unwrap();
    let ngens = rng.gen_range(max_gens.min(2)..=max_gens);
    let gens: Vec<Monomial> = (0..ngens)
        .map(|_| loop {
            let exps: Vec<u16> = (0..nvars)
                .map(|_| {
                    if rng.gen_bool(0.55) {
                        0
                    } else {
                        rng.gen_range(1..=2)
                    }
                })
                .collect();
            if exps.iter().any(|&e| e > 0) {
                break Monomial::from_exponents(exps);
            }
        })
        .collect();
    MonomialIdeal::new(&ring, gens).unwrap()
}

/// A random nonempty subset of `0..n`.
pub fn random_subset<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    loop {
        let s: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.4)).collect();
        if !s.is_empty() {
            return s;
        }
    }
}
