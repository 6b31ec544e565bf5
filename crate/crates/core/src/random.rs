//! Seeded generators for test instances: scalars, series, units and
//! change-of-basis matrices. All randomness comes from a caller-supplied RNG.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{FinSeries, IncidenceAlgebra};
use crate::linmap::LinMap;
use crate::matrix::Matrix;
use crate::ring::{RingSpec, RingValue};

/// A small scalar: an integer in `[-bound, bound]`, over the rationals
/// sometimes divided by a small denominator.
pub fn small_scalar<R: Rng + ?Sized>(ring: RingSpec, rng: &mut R, bound: i64) -> RingValue {
    let v = RingValue::from_i64(ring, rng.gen_range(-bound..=bound));
    if ring == RingSpec::Rationals && rng.gen_ratio(1, 3) {
        let den = RingValue::from_i64(ring, rng.gen_range(2..=4));
        return &v * &den.try_invert().expect("nonzero");
    }
    v
}

/// A random unit of the ring.
pub fn unit_scalar<R: Rng + ?Sized>(ring: RingSpec, rng: &mut R) -> RingValue {
    match ring {
        RingSpec::Integers => RingValue::from_i64(ring, if rng.gen_bool(0.5) { 1 } else { -1 }),
        RingSpec::Rationals => loop {
            let v = small_scalar(ring, rng, 3);
            if !v.is_zero() {
                return v;
            }
        },
        RingSpec::Modular(n) => loop {
            let v = RingValue::from_i64(ring, rng.gen_range(1..n as i64));
            if v.is_unit() {
                return v;
            }
        },
    }
}

/// A random series; each comparable pair is filled with probability `num/den`.
pub fn random_series<R: Rng + ?Sized>(fi: &IncidenceAlgebra, rng: &mut R, num: u32, den: u32) -> FinSeries {
    let ring = fi.ring();
    let mut entries = Vec::new();
    for &p in fi.basis().pairs() {
        if rng.gen_ratio(num, den) {
            entries.push((p, small_scalar(ring, rng, 4)));
        }
    }
    FinSeries::from_entries(fi.poset().clone(), ring, entries).expect("pairs lie on the order")
}

/// A random invertible series: unit diagonal, arbitrary small strict part.
pub fn random_unit_series<R: Rng + ?Sized>(fi: &IncidenceAlgebra, rng: &mut R) -> FinSeries {
    let ring = fi.ring();
    let entries: Vec<_> = fi
        .basis()
        .pairs()
        .iter()
        .map(|&(x, y)| {
            (
                (x, y),
                if x == y {
                    unit_scalar(ring, rng)
                } else {
                    small_scalar(ring, rng, 2)
                },
            )
        })
        .collect();
    FinSeries::from_entries(fi.poset().clone(), ring, entries).expect("pairs lie on the order")
}

/// A matrix invertible over any ring: a column permutation, `steps` column
/// transvections with small multipliers, and unit column scalings.
pub fn random_unimodular<R: Rng + ?Sized>(ring: RingSpec, dim: usize, rng: &mut R, steps: usize) -> Matrix {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let mut cols: Vec<Vec<RingValue>> = perm
        .iter()
        .map(|&p| {
            (0..dim)
                .map(|i| if i == p { unit_scalar(ring, rng) } else { ring.zero() })
                .collect()
        })
        .collect();
    if dim > 1 {
        for _ in 0..steps {
            let i = rng.gen_range(0..dim);
            let mut j = rng.gen_range(0..dim - 1);
            if j >= i {
                j += 1;
            }
            let c = loop {
                let c = RingValue::from_i64(ring, rng.gen_range(-2..=2));
                if !c.is_zero() {
                    break c;
                }
            };
            let add: Vec<RingValue> = cols[j].iter().map(|v| &c * v).collect();
            for (t, a) in cols[i].iter_mut().zip(&add) {
                *t += a;
            }
        }
    }
    Matrix::from_columns(ring, dim, &cols).expect("square")
}

/// `m` followed by a random change of basis of its codomain.
pub fn random_rebase<R: Rng + ?Sized>(m: &LinMap, rng: &mut R, steps: usize) -> crate::error::Result<LinMap> {
    let t = random_unimodular(m.ring(), m.codomain().dim(), rng, steps);
    m.rebase_codomain(&t)
}
