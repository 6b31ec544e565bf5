#![allow(dead_code)]

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use fialg::algebra::{FinSeries, IncidenceAlgebra};
use fialg::jordan::random_jordan_iso;
use fialg::linmap::LinMap;
use fialg::poset::{generate_random_poset, validate_poset, EdgeProbability, Poset};
use fialg::random::random_rebase;
use fialg::ring::{RingSpec, RingValue};

pub const RINGS: [RingSpec; 3] = [RingSpec::Rationals, RingSpec::Modular(9), RingSpec::Integers];

pub fn two_chains() -> Poset {
    validate_poset(&["1", "2", "3", "4"], &[("1", "2"), ("3", "4")]).unwrap()
}

/// The named small posets.
pub fn named_posets() -> Vec<(String, Poset)> {
    vec![
        ("singleton".into(), Poset::chain(1)),
        ("2-chain".into(), Poset::chain(2)),
        ("3-chain".into(), Poset::chain(3)),
        ("diamond".into(), Poset::diamond()),
        ("2-antichain".into(), Poset::antichain(2)),
        ("two 2-chains".into(), two_chains()),
    ]
}

pub fn random_poset(n: usize, seed: u64) -> Poset {
    // alternate sparse and dense so both connected and disconnected posets occur
    let p = if seed.is_multiple_of(2) {
        EdgeProbability::new(1, 3)
    } else {
        EdgeProbability::new(1, 2)
    };
    generate_random_poset(n, p.unwrap(), seed).unwrap()
}

/// Every poset on at most four elements that the kernel criterion covers.
pub fn small_posets() -> Vec<(String, Poset)> {
    let mut out: Vec<(String, Poset)> = named_posets().into_iter().filter(|(_, p)| p.len() <= 4).collect();
    out.push(("4-chain".into(), Poset::chain(4)));
    out.push(("4-antichain".into(), Poset::antichain(4)));
    out.push((
        "N".into(),
        validate_poset(&["1", "2", "3", "4"], &[("1", "3"), ("2", "3"), ("2", "4")]).unwrap(),
    ));
    for seed in 0..4 {
        out.push((format!("random4 seed {seed}"), random_poset(4, seed)));
    }
    out
}

/// A Jordan isomorphism of `fi` onto the same algebra in a random basis.
pub fn corpus_map(fi: &IncidenceAlgebra, seed: u64) -> LinMap {
    let phi = random_jordan_iso(fi, seed).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xa5a5);
    random_rebase(&phi, &mut rng, 4).unwrap()
}

pub fn fi(p: Poset, ring: RingSpec) -> IncidenceAlgebra {
    IncidenceAlgebra::new(Arc::new(p), ring)
}

/// `(fg)(x, y)` summed over every `z` of the poset, checking comparability by hand.
pub fn brute_convolve(f: &FinSeries, g: &FinSeries) -> FinSeries {
    let p = f.poset();
    let n = p.len();
    let mut entries = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if !p.leq(x, y) {
                continue;
            }
            let mut total = f.ring().zero();
            for z in 0..n {
                if p.leq(x, z) && p.leq(z, y) {
                    total = &total + &(&f.get(x, z) * &g.get(z, y));
                }
            }
            entries.push(((x, y), total));
        }
    }
    FinSeries::from_entries(p.clone(), f.ring(), entries).unwrap()
}

/// `sum_j m[., j] a_j`, one dot product per output coordinate.
pub fn naive_apply(m: &LinMap, a: &[RingValue]) -> Vec<RingValue> {
    let cols = m.columns();
    (0..m.codomain().dim())
        .map(|i| {
            cols.iter()
                .zip(a)
                .fold(m.ring().zero(), |acc, (c, x)| &acc + &(&c[i] * x))
        })
        .collect()
}
