use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ring::{RingSpec, RingValue};

/// An element of the incidence algebra of a finite poset.
///
/// Only pairs `x <= y` can carry a coefficient, and zero coefficients are never
/// stored, so structural equality is equality of series.
#[derive(Debug, Clone)]
pub struct FinSeries {
    poset: Arc<Poset>,
    ring: RingSpec,
    coeffs: BTreeMap<(usize, usize), RingValue>,
}

impl PartialEq for FinSeries {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring
            && (Arc::ptr_eq(&self.poset, &other.poset) || self.poset == other.poset)
            && self.coeffs == other.coeffs
    }
}

impl Eq for FinSeries {}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Truncation {
    /// Keep entries `(x, v)` with `v > x`.
    Above,
    /// Keep entries `(u, x)` with `u < x`.
    Below,
}

impl FinSeries {
    pub fn zero(poset: Arc<Poset>, ring: RingSpec) -> Self {
        FinSeries {
            poset,
            ring,
            coeffs: BTreeMap::new(),
        }
    }

    /// The identity `delta`.
    pub fn delta(poset: Arc<Poset>, ring: RingSpec) -> Self {
        let all: Vec<usize> = (0..poset.len()).collect();
        Self::subset_idempotent(poset, ring, &all)
    }

    /// The matrix unit `e_xy`.
    pub fn unit_series(poset: Arc<Poset>, ring: RingSpec, x: usize, y: usize) -> Result<Self> {
        let mut s = Self::zero(poset, ring);
        s.set(x, y, ring.one())?;
        Ok(s)
    }

    pub fn unit_series_labels(poset: Arc<Poset>, ring: RingSpec, x: &str, y: &str) -> Result<Self> {
        let (x, y) = (poset.index_of(x)?, poset.index_of(y)?);
        Self::unit_series(poset, ring, x, y)
    }

    /// The diagonal idempotent `e_Y`.
    pub fn subset_idempotent(poset: Arc<Poset>, ring: RingSpec, subset: &[usize]) -> Self {
        let mut s = Self::zero(poset, ring);
        for &x in subset {
            assert!(x < s.poset.len(), "element index out of range");
            s.coeffs.insert((x, x), ring.one());
        }
        s
    }

    /// All ones on comparable pairs.
    pub fn zeta(poset: Arc<Poset>, ring: RingSpec) -> Self {
        let n = poset.len();
        let coeffs = (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| poset.leq(x, y))
            .map(|k| (k, ring.one()))
            .collect();
        FinSeries { poset, ring, coeffs }
    }

    /// Sums the given entries; an entry off the order is `NotComparable`.
    pub fn from_entries<I>(poset: Arc<Poset>, ring: RingSpec, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((usize, usize), RingValue)>,
    {
        let mut s = Self::zero(poset, ring);
        for ((x, y), v) in entries {
            let cur = s.get(x, y);
            s.set(x, y, &cur + &v)?;
        }
        Ok(s)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn get(&self, x: usize, y: usize) -> RingValue {
        self.coeffs.get(&(x, y)).cloned().unwrap_or_else(|| self.ring.zero())
    }

    pub fn set(&mut self, x: usize, y: usize, v: RingValue) -> Result<()> {
        let n = self.poset.len();
        if x >= n || y >= n {
            return Err(Error::UnknownElement(format!("index {}", x.max(y))));
        }
        if v.spec() != self.ring {
            return Err(Error::SpecMismatch(v.spec(), self.ring));
        }
        if !self.poset.leq(x, y) {
            if v.is_zero() {
                return Ok(());
            }
            return Err(Error::NotComparable(
                self.poset.label(x).to_owned(),
                self.poset.label(y).to_owned(),
            ));
        }
        if v.is_zero() {
            self.coeffs.remove(&(x, y));
        } else {
            self.coeffs.insert((x, y), v);
        }
        Ok(())
    }

    /// Nonzero entries in lexicographic `(x, y)` order.
    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), &RingValue)> + '_ {
        self.coeffs.iter().map(|(&k, v)| (k, v))
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_diagonal(&self) -> bool {
        self.coeffs.keys().all(|&(x, y)| x == y)
    }

    /// Vanishes on the diagonal.
    pub fn is_strict(&self) -> bool {
        self.coeffs.keys().all(|&(x, y)| x != y)
    }

    fn check_context(&self, other: &FinSeries) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::SpecMismatch(self.ring, other.ring));
        }
        if !Arc::ptr_eq(&self.poset, &other.poset) && self.poset != other.poset {
            return Err(Error::ContextMismatch("series live on different posets".into()));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: BTreeMap<(usize, usize), RingValue>) -> Self {
        FinSeries {
            poset: self.poset.clone(),
            ring: self.ring,
            coeffs,
        }
    }

    pub fn checked_add(&self, other: &FinSeries) -> Result<FinSeries> {
        self.check_context(other)?;
        let mut coeffs = self.coeffs.clone();
        for (k, v) in &other.coeffs {
            let sum = match coeffs.get(k) {
                Some(cur) => cur + v,
                None => v.clone(),
            };
            if sum.is_zero() {
                coeffs.remove(k);
            } else {
                coeffs.insert(*k, sum);
            }
        }
        Ok(self.with_coeffs(coeffs))
    }

    pub fn scale(&self, s: &RingValue) -> FinSeries {
        let coeffs = self
            .coeffs
            .iter()
            .map(|(k, v)| (*k, s * v))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        self.with_coeffs(coeffs)
    }

    /// `(fg)(x, y) = sum over x <= z <= y of f(x, z) g(z, y)`.
    ///
    /// Walks the support of `self` and, for each `(x, z)`, the row `z` of `other`.
    pub fn convolve(&self, other: &FinSeries) -> Result<FinSeries> {
        self.check_context(other)?;
        let mut coeffs: BTreeMap<(usize, usize), RingValue> = BTreeMap::new();
        for (&(x, z), a) in &self.coeffs {
            for (&(_, y), b) in other.coeffs.range((z, 0)..(z + 1, 0)) {
                let p = a * b;
                match coeffs.get_mut(&(x, y)) {
                    Some(cur) => *cur += &p,
                    None => {
                        coeffs.insert((x, y), p);
                    }
                }
            }
        }
        coeffs.retain(|_, v| !v.is_zero());
        Ok(self.with_coeffs(coeffs))
    }

    /// `e_x f e_y`, by the closed form `f(x, y) e_xy` (zero unless `x <= y`).
    pub fn sandwich(&self, x: usize, y: usize) -> FinSeries {
        let mut coeffs = BTreeMap::new();
        if let Some(v) = self.coeffs.get(&(x, y)) {
            coeffs.insert((x, y), v.clone());
        }
        self.with_coeffs(coeffs)
    }

    /// `(f_D, f_Z)`: the diagonal part and the part vanishing on the diagonal.
    pub fn split_diag(&self) -> (FinSeries, FinSeries) {
        let (d, z): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .coeffs
            .iter()
            .map(|(k, v)| (*k, v.clone()))
            .partition(|((x, y), _)| x == y);
        (self.with_coeffs(d), self.with_coeffs(z))
    }

    /// `f_{>x}` (row `x` strictly above the diagonal) or `f_{<x}` (column `x` strictly below it).
    pub fn truncate(&self, x: usize, mode: Truncation) -> FinSeries {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(&(u, v), _)| match mode {
                Truncation::Above => u == x && v != x,
                Truncation::Below => v == x && u != x,
            })
            .map(|(k, v)| (*k, v.clone()))
            .collect();
        self.with_coeffs(coeffs)
    }

    /// Two-sided inverse; it exists iff every diagonal entry is a unit.
    /// Computed interval by interval along a linear extension.
    pub fn try_inverse(&self) -> Result<FinSeries> {
        let p = &self.poset;
        let n = p.len();
        let mut diag_inv = Vec::with_capacity(n);
        for x in 0..n {
            let inv = self
                .get(x, x)
                .try_invert()
                .map_err(|_| Error::NotAUnit(format!("diagonal entry at {}", p.label(x)), self.ring))?;
            diag_inv.push(inv);
        }
        let order = p.linear_extension();
        let mut inv: BTreeMap<(usize, usize), RingValue> = BTreeMap::new();
        for &y in &order {
            // x runs downwards so every z in (x, y] is already done
            for &x in order.iter().rev() {
                if !p.leq(x, y) {
                    continue;
                }
                let value = if x == y {
                    diag_inv[x].clone()
                } else {
                    let mut acc = self.ring.zero();
                    for z in p.interval_indices(x, y) {
                        if z == x {
                            continue;
                        }
                        if let (Some(a), Some(b)) = (self.coeffs.get(&(x, z)), inv.get(&(z, y))) {
                            acc += &(a * b);
                        }
                    }
                    -&(&diag_inv[x] * &acc)
                };
                if !value.is_zero() {
                    inv.insert((x, y), value);
                }
            }
        }
        Ok(self.with_coeffs(inv))
    }
}

impl Add for &FinSeries {
    type Output = FinSeries;
    fn add(self, rhs: &FinSeries) -> FinSeries {
        self.checked_add(rhs).expect("series context mismatch")
    }
}

impl Neg for &FinSeries {
    type Output = FinSeries;
    fn neg(self) -> FinSeries {
        self.scale(&-&self.ring.one())
    }
}

impl Sub for &FinSeries {
    type Output = FinSeries;
    fn sub(self, rhs: &FinSeries) -> FinSeries {
        self + &-rhs
    }
}

impl Mul for &FinSeries {
    type Output = FinSeries;
    fn mul(self, rhs: &FinSeries) -> FinSeries {
        self.convolve(rhs).expect("series context mismatch")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: RingSpec = RingSpec::Rationals;

    fn chain(n: usize) -> Arc<Poset> {
        Arc::new(Poset::chain(n))
    }

    fn e(p: &Arc<Poset>, x: usize, y: usize) -> FinSeries {
        FinSeries::unit_series(p.clone(), Q, x, y).unwrap()
    }

    fn q(v: i64) -> RingValue {
        RingValue::from_i64(Q, v)
    }

    /// Brute-force convolution straight from the defining sum.
    fn convolve_oracle(f: &FinSeries, g: &FinSeries) -> FinSeries {
        let p = f.poset().clone();
        let n = p.len();
        let mut entries = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if p.leq(x, z) && p.leq(z, y) {
                        entries.push(((x, y), &f.get(x, z) * &g.get(z, y)));
                    }
                }
            }
        }
        FinSeries::from_entries(p, f.ring(), entries).unwrap()
    }

    #[test]
    fn matrix_unit_product() {
        let p = chain(3);
        assert_eq!(&e(&p, 0, 1) * &e(&p, 1, 2), e(&p, 0, 2));
        assert!((&e(&p, 1, 2) * &e(&p, 0, 1)).is_zero());
    }

    #[test]
    fn zeta_squared_counts_interval() {
        let p = chain(3);
        let z = FinSeries::zeta(p.clone(), Q);
        let zz = &z * &z;
        assert_eq!(zz.get(0, 2), q(3));
        assert_eq!(zz, convolve_oracle(&z, &z));
    }

    #[test]
    fn delta_is_identity() {
        let p = Arc::new(Poset::diamond());
        let f = FinSeries::from_entries(p.clone(), Q, [((0, 3), q(5)), ((1, 1), q(-2)), ((0, 1), q(7))]).unwrap();
        let d = FinSeries::delta(p.clone(), Q);
        assert_eq!(&d * &f, f);
        assert_eq!(&f * &d, f);
        assert_eq!(FinSeries::subset_idempotent(p.clone(), Q, &[0, 1, 2, 3]), d);
        assert_eq!(e(&p, 2, 2), FinSeries::subset_idempotent(p, Q, &[2]));
    }

    #[test]
    fn off_order_entries_are_rejected() {
        let p = chain(2);
        assert!(matches!(
            FinSeries::unit_series(p.clone(), Q, 1, 0),
            Err(Error::NotComparable(..))
        ));
        let other = FinSeries::zero(chain(3), Q);
        assert!(matches!(e(&p, 0, 1).convolve(&other), Err(Error::ContextMismatch(_))));
        let ints = FinSeries::zero(p.clone(), RingSpec::Integers);
        assert!(matches!(e(&p, 0, 1).convolve(&ints), Err(Error::SpecMismatch(..))));
    }

    #[test]
    fn sandwich_closed_form() {
        let p = chain(2);
        let z = FinSeries::zeta(p.clone(), Q);
        assert_eq!(z.sandwich(0, 1), e(&p, 0, 1));
        assert!(z.sandwich(1, 0).is_zero());
        let p3 = chain(3);
        let f = FinSeries::from_entries(p3.clone(), Q, [((0, 2), q(4)), ((0, 1), q(3)), ((1, 1), q(2))]).unwrap();
        let two_sided = &(&e(&p3, 0, 0) * &f) * &e(&p3, 2, 2);
        assert_eq!(f.sandwich(0, 2), two_sided);
        assert_eq!(f.sandwich(0, 2), e(&p3, 0, 2).scale(&q(4)));
    }

    #[test]
    fn diagonal_split() {
        let p = chain(2);
        let d = FinSeries::delta(p.clone(), Q);
        let (dd, dz) = d.split_diag();
        assert_eq!(dd, d);
        assert!(dz.is_zero());
        let (ud, uz) = e(&p, 0, 1).split_diag();
        assert!(ud.is_zero());
        assert_eq!(uz, e(&p, 0, 1));
        let (zd, zz) = FinSeries::zeta(p.clone(), Q).split_diag();
        assert_eq!(zd, &e(&p, 0, 0) + &e(&p, 1, 1));
        assert_eq!(zz, e(&p, 0, 1));
    }

    #[test]
    fn truncations() {
        let p = chain(3);
        let z = FinSeries::zeta(p.clone(), Q);
        assert_eq!(z.truncate(1, Truncation::Above), e(&p, 1, 2));
        assert_eq!(z.truncate(1, Truncation::Below), e(&p, 0, 1));
        assert!(e(&p, 0, 1).truncate(0, Truncation::Below).is_zero());
        assert!(z
            .truncate(1, Truncation::Above)
            .truncate(1, Truncation::Below)
            .is_zero());
    }

    #[test]
    fn unit_inverse() {
        let p = chain(2);
        let u = &FinSeries::delta(p.clone(), Q) + &e(&p, 0, 1);
        let inv = u.try_inverse().unwrap();
        assert_eq!(inv, &FinSeries::delta(p.clone(), Q) - &e(&p, 0, 1));
        let d = Arc::new(Poset::diamond());
        let w = FinSeries::from_entries(
            d.clone(),
            RingSpec::Integers,
            [
                ((0, 0), -1),
                ((1, 1), 1),
                ((2, 2), 1),
                ((3, 3), -1),
                ((0, 3), 5),
                ((0, 1), 2),
                ((2, 3), -3),
            ]
            .map(|(k, v)| (k, RingValue::from_i64(RingSpec::Integers, v))),
        )
        .unwrap();
        let wi = w.try_inverse().unwrap();
        assert_eq!(&w * &wi, FinSeries::delta(d.clone(), RingSpec::Integers));
        assert_eq!(&wi * &w, FinSeries::delta(d, RingSpec::Integers));
        let two = FinSeries::delta(p, RingSpec::Integers).scale(&RingValue::from_i64(RingSpec::Integers, 2));
        assert!(matches!(two.try_inverse(), Err(Error::NotAUnit(..))));
    }
}
