use std::collections::HashMap;
use std::sync::Arc;

use super::{AlgElem, FinSeries, StructAlgebra};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ring::{RingSpec, RingValue};

/// The matrix-unit basis: `e_x` in global element order, then `e_xy` for `x < y`
/// lexicographic by global index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgBasis {
    pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
    diagonal_len: usize,
}

impl AlgBasis {
    pub fn new(poset: &Poset) -> Self {
        let pairs: Vec<(usize, usize)> = (0..poset.len()).map(|x| (x, x)).chain(poset.strict_pairs()).collect();
        let index = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        AlgBasis {
            pairs,
            index,
            diagonal_len: poset.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pair(&self, i: usize) -> (usize, usize) {
        self.pairs[i]
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn index_of(&self, x: usize, y: usize) -> Option<usize> {
        self.index.get(&(x, y)).copied()
    }

    pub fn diagonal_len(&self) -> usize {
        self.diagonal_len
    }

    pub fn diagonal_indices(&self) -> std::ops::Range<usize> {
        0..self.diagonal_len
    }

    pub fn strict_indices(&self) -> std::ops::Range<usize> {
        self.diagonal_len..self.pairs.len()
    }

    pub fn is_diagonal(&self, i: usize) -> bool {
        i < self.diagonal_len
    }
}

/// The incidence algebra of a finite poset, as a [`StructAlgebra`] in the
/// matrix-unit basis together with the coordinate maps to and from [`FinSeries`].
#[derive(Debug, Clone)]
pub struct IncidenceAlgebra {
    poset: Arc<Poset>,
    ring: RingSpec,
    basis: AlgBasis,
    algebra: Arc<StructAlgebra>,
}

/// Structure constants come from `e_xy e_uv = [y = u] e_xv`.
pub fn to_struct_algebra(poset: Arc<Poset>, ring: RingSpec) -> IncidenceAlgebra {
    let basis = AlgBasis::new(&poset);
    let d = basis.len();
    let mut products = Vec::with_capacity(d * d);
    for &(x, y) in basis.pairs() {
        for &(u, v) in basis.pairs() {
            if y == u {
                let k = basis.index_of(x, v).expect("x <= v by transitivity");
                products.push(vec![(k, ring.one())]);
            } else {
                products.push(Vec::new());
            }
        }
    }
    let mut identity = vec![ring.zero(); d];
    for slot in identity.iter_mut().take(basis.diagonal_len()) {
        *slot = ring.one();
    }
    let labels = basis
        .pairs()
        .iter()
        .map(|&(x, y)| {
            if x == y {
                format!("e({})", poset.label(x))
            } else {
                format!("e({},{})", poset.label(x), poset.label(y))
            }
        })
        .collect();
    let algebra = Arc::new(StructAlgebra::from_parts(ring, d, products, identity, labels));
    IncidenceAlgebra {
        poset,
        ring,
        basis,
        algebra,
    }
}

impl IncidenceAlgebra {
    pub fn new(poset: Arc<Poset>, ring: RingSpec) -> Self {
        to_struct_algebra(poset, ring)
    }

    pub fn poset(&self) -> &Arc<Poset> {
        &self.poset
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn basis(&self) -> &AlgBasis {
        &self.basis
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn coord_vec(&self, f: &FinSeries) -> Result<Vec<RingValue>> {
        if f.ring() != self.ring {
            return Err(Error::SpecMismatch(f.ring(), self.ring));
        }
        if !Arc::ptr_eq(f.poset(), &self.poset) && **f.poset() != *self.poset {
            return Err(Error::ContextMismatch("series lives on a different poset".into()));
        }
        let mut v = self.algebra.zero_vec();
        for ((x, y), c) in f.entries() {
            v[self.basis.index_of(x, y).expect("support lies on the order")] = c.clone();
        }
        Ok(v)
    }

    pub fn coords(&self, f: &FinSeries) -> Result<AlgElem> {
        Ok(AlgElem::from_parts(self.algebra.clone(), self.coord_vec(f)?))
    }

    pub fn series_from_coords(&self, v: &[RingValue]) -> Result<FinSeries> {
        if v.len() != self.dim() {
            return Err(Error::SizeMismatch(v.len(), self.dim()));
        }
        FinSeries::from_entries(
            self.poset.clone(),
            self.ring,
            v.iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| (self.basis.pair(i), c.clone())),
        )
    }

    pub fn series(&self, a: &AlgElem) -> Result<FinSeries> {
        if !Arc::ptr_eq(a.algebra(), &self.algebra) && **a.algebra() != *self.algebra {
            return Err(Error::ContextMismatch("element of a different algebra".into()));
        }
        self.series_from_coords(a.coords())
    }

    /// Coordinates of `e_Y`.
    pub fn subset_idempotent_vec(&self, subset: &[usize]) -> Vec<RingValue> {
        let mut v = self.algebra.zero_vec();
        for &x in subset {
            v[x] = self.ring.one();
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_chain_constants() {
        let fi = to_struct_algebra(Arc::new(Poset::chain(2)), RingSpec::Rationals);
        assert_eq!(fi.dim(), 3);
        let e1 = fi.basis().index_of(0, 0).unwrap();
        let e12 = fi.basis().index_of(0, 1).unwrap();
        assert_eq!(e12, 2);
        assert_eq!(fi.algebra().product_vec(e1, e12), fi.algebra().basis_vec(e12));
        assert!(fi.algebra().basis_product(e12, e1).is_empty());
        assert_eq!(fi.algebra().labels(), ["e(1)", "e(2)", "e(1,2)"]);
    }

    #[test]
    fn identity_is_sum_of_diagonal_units() {
        let fi = to_struct_algebra(Arc::new(Poset::diamond()), RingSpec::Integers);
        let delta = FinSeries::delta(fi.poset().clone(), RingSpec::Integers);
        assert_eq!(fi.coord_vec(&delta).unwrap(), fi.algebra().identity());
        // the constants are valid structure constants
        let d = fi.dim();
        let constants = (0..d)
            .map(|i| (0..d).map(|j| fi.algebra().product_vec(i, j)).collect())
            .collect();
        assert!(StructAlgebra::new(RingSpec::Integers, constants, fi.algebra().identity().to_vec(), None).is_ok());
    }

    #[test]
    fn coordinate_round_trip() {
        let p = Arc::new(Poset::diamond());
        let fi = to_struct_algebra(p.clone(), RingSpec::Modular(9));
        let f = FinSeries::zeta(p, RingSpec::Modular(9));
        assert_eq!(fi.series(&fi.coords(&f).unwrap()).unwrap(), f);
    }
}
