use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{add_vec, is_zero_vec, scale_vec, sub_vec, zero_vec};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{RingSpec, RingValue};

/// Largest dimension for which associativity is checked on every basis triple.
const EXHAUSTIVE_ASSOCIATIVITY_DIM: usize = 10;
const SAMPLED_ASSOCIATIVITY_TRIPLES: usize = 400;

type SparseVec = Vec<(usize, RingValue)>;

/// A finite-dimensional unital associative algebra over a [`RingSpec`], given by
/// the coordinates of every product of two basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructAlgebra {
    ring: RingSpec,
    dim: usize,
    products: Vec<SparseVec>,
    identity: Vec<RingValue>,
    labels: Vec<String>,
}

fn sparse(v: &[RingValue]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

impl StructAlgebra {
    /// `constants[i][j]` is the coordinate vector of `b_i b_j`. Associativity and
    /// the identity laws are checked (on every basis triple for small dimension,
    /// on a fixed sample of triples otherwise).
    pub fn new(
        ring: RingSpec,
        constants: Vec<Vec<Vec<RingValue>>>,
        identity: Vec<RingValue>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let dim = constants.len();
        if identity.len() != dim {
            return Err(Error::SizeMismatch(identity.len(), dim));
        }
        let mut products = Vec::with_capacity(dim * dim);
        for row in &constants {
            if row.len() != dim {
                return Err(Error::SizeMismatch(row.len(), dim));
            }
            for v in row {
                if v.len() != dim {
                    return Err(Error::SizeMismatch(v.len(), dim));
                }
                if let Some(bad) = v.iter().find(|x| x.spec() != ring) {
                    return Err(Error::SpecMismatch(bad.spec(), ring));
                }
                products.push(sparse(v));
            }
        }
        let labels = match labels {
            Some(l) if l.len() != dim => return Err(Error::SizeMismatch(l.len(), dim)),
            Some(l) => l,
            None => (0..dim).map(|i| format!("b{i}")).collect(),
        };
        let alg = StructAlgebra {
            ring,
            dim,
            products,
            identity,
            labels,
        };
        alg.validate()?;
        Ok(alg)
    }

    pub(crate) fn from_parts(
        ring: RingSpec,
        dim: usize,
        products: Vec<SparseVec>,
        identity: Vec<RingValue>,
        labels: Vec<String>,
    ) -> Self {
        debug_assert_eq!(products.len(), dim * dim);
        StructAlgebra {
            ring,
            dim,
            products,
            identity,
            labels,
        }
    }

    fn validate(&self) -> Result<()> {
        let d = self.dim;
        for i in 0..d {
            let b = self.basis_vec(i);
            if self.mul(&self.identity, &b) != b || self.mul(&b, &self.identity) != b {
                return Err(Error::Invalid(format!(
                    "identity law fails on basis vector {}",
                    self.labels[i]
                )));
            }
        }
        let check = |i: usize, j: usize, k: usize| -> Result<()> {
            let left = self.mul(&self.product_vec(i, j), &self.basis_vec(k));
            let right = self.mul(&self.basis_vec(i), &self.product_vec(j, k));
            if left != right {
                return Err(Error::Invalid(format!(
                    "associativity fails on ({}, {}, {})",
                    self.labels[i], self.labels[j], self.labels[k]
                )));
            }
            Ok(())
        };
        if d <= EXHAUSTIVE_ASSOCIATIVITY_DIM {
            for i in 0..d {
                for j in 0..d {
                    for k in 0..d {
                        check(i, j, k)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..SAMPLED_ASSOCIATIVITY_TRIPLES {
                check(rng.gen_range(0..d), rng.gen_range(0..d), rng.gen_range(0..d))?;
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn identity(&self) -> &[RingValue] {
        &self.identity
    }

    pub fn zero_vec(&self) -> Vec<RingValue> {
        zero_vec(self.ring, self.dim)
    }

    pub fn basis_vec(&self, i: usize) -> Vec<RingValue> {
        let mut v = self.zero_vec();
        v[i] = self.ring.one();
        v
    }

    /// Nonzero coordinates of `b_i b_j`.
    pub fn basis_product(&self, i: usize, j: usize) -> &[(usize, RingValue)] {
        &self.products[i * self.dim + j]
    }

    pub fn product_vec(&self, i: usize, j: usize) -> Vec<RingValue> {
        let mut v = self.zero_vec();
        for (k, c) in self.basis_product(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Product of two coordinate vectors.
    pub fn mul(&self, a: &[RingValue], b: &[RingValue]) -> Vec<RingValue> {
        assert!(a.len() == self.dim && b.len() == self.dim, "dimension mismatch");
        let mut out = self.zero_vec();
        let b_support: Vec<(usize, &RingValue)> = b.iter().enumerate().filter(|(_, v)| !v.is_zero()).collect();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for &(j, bj) in &b_support {
                let prod = self.basis_product(i, j);
                if prod.is_empty() {
                    continue;
                }
                let s = ai * bj;
                for (k, c) in prod {
                    out[*k] += &(&s * c);
                }
            }
        }
        out
    }

    /// The matrix of `x -> x b`.
    pub fn right_mul_matrix(&self, b: &[RingValue]) -> Matrix {
        let cols: Vec<Vec<RingValue>> = (0..self.dim).map(|l| self.mul(&self.basis_vec(l), b)).collect();
        Matrix::from_columns(self.ring, self.dim, &cols).expect("square")
    }

    /// The matrix of `x -> a x`.
    pub fn left_mul_matrix(&self, a: &[RingValue]) -> Matrix {
        let cols: Vec<Vec<RingValue>> = (0..self.dim).map(|l| self.mul(a, &self.basis_vec(l))).collect();
        Matrix::from_columns(self.ring, self.dim, &cols).expect("square")
    }

    /// The same algebra in the basis given by the columns of `t` (old coordinates).
    /// Returns the new algebra and `t^-1`, which converts old coordinates to new ones.
    pub fn change_basis(&self, t: &Matrix) -> Result<(StructAlgebra, Matrix)> {
        if t.rows() != self.dim || t.cols() != self.dim {
            return Err(Error::SizeMismatch(t.rows(), self.dim));
        }
        let t_inv = t.inverse()?;
        let cols = t.columns();
        let mut products = Vec::with_capacity(self.dim * self.dim);
        for i in 0..self.dim {
            for j in 0..self.dim {
                products.push(sparse(&t_inv.mul_vec(&self.mul(&cols[i], &cols[j]))));
            }
        }
        let identity = t_inv.mul_vec(&self.identity);
        let labels = (0..self.dim).map(|i| format!("b{i}")).collect();
        Ok((
            StructAlgebra::from_parts(self.ring, self.dim, products, identity, labels),
            t_inv,
        ))
    }
}

/// A coordinate vector in a [`StructAlgebra`].
#[derive(Debug, Clone)]
pub struct AlgElem {
    algebra: Arc<StructAlgebra>,
    coords: Vec<RingValue>,
}

impl PartialEq for AlgElem {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra) && self.coords == other.coords
    }
}

impl Eq for AlgElem {}

impl AlgElem {
    pub fn new(algebra: Arc<StructAlgebra>, coords: Vec<RingValue>) -> Result<Self> {
        if coords.len() != algebra.dim() {
            return Err(Error::SizeMismatch(coords.len(), algebra.dim()));
        }
        if let Some(bad) = coords.iter().find(|x| x.spec() != algebra.ring()) {
            return Err(Error::SpecMismatch(bad.spec(), algebra.ring()));
        }
        Ok(AlgElem { algebra, coords })
    }

    pub(crate) fn from_parts(algebra: Arc<StructAlgebra>, coords: Vec<RingValue>) -> Self {
        debug_assert_eq!(coords.len(), algebra.dim());
        AlgElem { algebra, coords }
    }

    pub fn zero(algebra: Arc<StructAlgebra>) -> Self {
        let coords = algebra.zero_vec();
        AlgElem { algebra, coords }
    }

    pub fn one(algebra: Arc<StructAlgebra>) -> Self {
        let coords = algebra.identity().to_vec();
        AlgElem { algebra, coords }
    }

    pub fn basis(algebra: Arc<StructAlgebra>, i: usize) -> Self {
        let coords = algebra.basis_vec(i);
        AlgElem { algebra, coords }
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[RingValue] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<RingValue> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        is_zero_vec(&self.coords)
    }

    fn check_context(&self, other: &AlgElem) -> Result<()> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra == other.algebra {
            Ok(())
        } else {
            Err(Error::ContextMismatch("elements of different algebras".into()))
        }
    }

    pub fn mul(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_context(other)?;
        Ok(AlgElem::from_parts(
            self.algebra.clone(),
            self.algebra.mul(&self.coords, &other.coords),
        ))
    }

    pub fn add(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_context(other)?;
        Ok(AlgElem::from_parts(
            self.algebra.clone(),
            add_vec(&self.coords, &other.coords),
        ))
    }

    pub fn sub(&self, other: &AlgElem) -> Result<AlgElem> {
        self.check_context(other)?;
        Ok(AlgElem::from_parts(
            self.algebra.clone(),
            sub_vec(&self.coords, &other.coords),
        ))
    }

    pub fn scale(&self, s: &RingValue) -> AlgElem {
        AlgElem::from_parts(self.algebra.clone(), scale_vec(s, &self.coords))
    }
}
