//! Linear maps between structure-constant algebras and the recognizers for
//! homomorphisms, anti-homomorphisms and Jordan homomorphisms.
//!
//! Jordan recognition works on basis tuples. The polarized pair identity
//! `m(ab + ba) = m(a)m(b) + m(b)m(a)` at `a = b` gives `2 m(a^2) = 2 m(a)^2`,
//! and the polarized triple identity `m(abc + cba) = m(a)m(b)m(c) + m(c)m(b)m(a)`
//! at `a = c` gives `2 m(aba) = 2 m(a)m(b)m(a)`. Both sides are multilinear, so
//! checking them on basis tuples covers all elements, and over a 2-torsionfree
//! ring the factor 2 cancels.

use std::sync::Arc;

use rayon::prelude::*;

use crate::algebra::{add_vec, AlgElem, StructAlgebra};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::report::{Check, Report, Witness};
use crate::ring::{RingSpec, RingValue};

/// An `R`-linear map, stored as the images of the domain basis vectors.
#[derive(Debug, Clone)]
pub struct LinMap {
    domain: Arc<StructAlgebra>,
    codomain: Arc<StructAlgebra>,
    matrix: Matrix,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        same_algebra(&self.domain, &other.domain)
            && same_algebra(&self.codomain, &other.codomain)
            && self.matrix == other.matrix
    }
}

impl Eq for LinMap {}

pub(crate) fn same_algebra(a: &Arc<StructAlgebra>, b: &Arc<StructAlgebra>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl LinMap {
    pub fn new(domain: Arc<StructAlgebra>, codomain: Arc<StructAlgebra>, columns: &[Vec<RingValue>]) -> Result<Self> {
        if columns.len() != domain.dim() {
            return Err(Error::SizeMismatch(columns.len(), domain.dim()));
        }
        let matrix = Matrix::from_columns(codomain.ring(), codomain.dim(), columns)?;
        Self::from_matrix(domain, codomain, matrix)
    }

    pub fn from_matrix(domain: Arc<StructAlgebra>, codomain: Arc<StructAlgebra>, matrix: Matrix) -> Result<Self> {
        if domain.ring() != codomain.ring() {
            return Err(Error::SpecMismatch(domain.ring(), codomain.ring()));
        }
        if matrix.ring() != domain.ring() {
            return Err(Error::SpecMismatch(matrix.ring(), domain.ring()));
        }
        if matrix.cols() != domain.dim() || matrix.rows() != codomain.dim() {
            return Err(Error::SizeMismatch(matrix.cols(), domain.dim()));
        }
        Ok(LinMap {
            domain,
            codomain,
            matrix,
        })
    }

    pub fn identity(algebra: Arc<StructAlgebra>) -> Self {
        let matrix = Matrix::identity(algebra.ring(), algebra.dim());
        LinMap {
            domain: algebra.clone(),
            codomain: algebra,
            matrix,
        }
    }

    pub fn zero(domain: Arc<StructAlgebra>, codomain: Arc<StructAlgebra>) -> Self {
        let matrix = Matrix::zeros(domain.ring(), codomain.dim(), domain.dim());
        LinMap {
            domain,
            codomain,
            matrix,
        }
    }

    pub fn domain(&self) -> &Arc<StructAlgebra> {
        &self.domain
    }

    pub fn codomain(&self) -> &Arc<StructAlgebra> {
        &self.codomain
    }

    pub fn ring(&self) -> RingSpec {
        self.domain.ring()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Image of domain basis vector `j`.
    pub fn column(&self, j: usize) -> Vec<RingValue> {
        self.matrix.column(j)
    }

    pub fn columns(&self) -> Vec<Vec<RingValue>> {
        self.matrix.columns()
    }

    /// The same map with entry `(row, col)` increased by `delta`.
    pub fn perturbed(&self, row: usize, col: usize, delta: &RingValue) -> LinMap {
        let mut matrix = self.matrix.clone();
        let v = matrix.get(row, col) + delta;
        matrix.set(row, col, v);
        LinMap {
            domain: self.domain.clone(),
            codomain: self.codomain.clone(),
            matrix,
        }
    }

    /// The same map with its codomain rewritten in the basis given by the
    /// columns of `t` (in old coordinates).
    pub fn rebase_codomain(&self, t: &Matrix) -> Result<LinMap> {
        let (b, t_inv) = self.codomain.change_basis(t)?;
        LinMap::from_matrix(self.domain.clone(), Arc::new(b), t_inv.mul(&self.matrix))
    }

    pub fn apply_vec(&self, a: &[RingValue]) -> Vec<RingValue> {
        self.matrix.mul_vec(a)
    }

    fn apply_sparse(&self, a: &[(usize, RingValue)]) -> Vec<RingValue> {
        let mut out = self.codomain.zero_vec();
        for (j, c) in a {
            for (i, o) in out.iter_mut().enumerate() {
                let m = self.matrix.get(i, *j);
                if !m.is_zero() {
                    *o += &(m * c);
                }
            }
        }
        out
    }

    pub fn apply(&self, a: &AlgElem) -> Result<AlgElem> {
        if !same_algebra(a.algebra(), &self.domain) {
            return Err(Error::ContextMismatch("element is not in the domain of the map".into()));
        }
        Ok(AlgElem::from_parts(self.codomain.clone(), self.apply_vec(a.coords())))
    }

    /// `g . f`
    pub fn compose(g: &LinMap, f: &LinMap) -> Result<LinMap> {
        if !same_algebra(&f.codomain, &g.domain) {
            return Err(Error::ContextMismatch("codomain of f is not the domain of g".into()));
        }
        Ok(LinMap {
            domain: f.domain.clone(),
            codomain: g.codomain.clone(),
            matrix: g.matrix.mul(&f.matrix),
        })
    }

    pub fn invert(&self) -> Result<LinMap> {
        let matrix = self.matrix.inverse()?;
        Ok(LinMap {
            domain: self.codomain.clone(),
            codomain: self.domain.clone(),
            matrix,
        })
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.rows() == self.matrix.cols() && self.matrix.inverse().is_ok()
    }

    fn images(&self) -> Vec<Vec<RingValue>> {
        self.columns()
    }

    /// All products `m(b_i) m(b_j)`, row-major.
    fn image_products(&self, images: &[Vec<RingValue>]) -> Vec<Vec<RingValue>> {
        let d = self.domain.dim();
        (0..d * d)
            .into_par_iter()
            .map(|ij| self.codomain.mul(&images[ij / d], &images[ij % d]))
            .collect()
    }

    fn label(&self, i: usize) -> String {
        self.domain.labels()[i].clone()
    }

    /// Checks `m(b_i b_j) = m(b_i) m(b_j)` (or `m(b_j) m(b_i)` when `anti`) on all basis pairs.
    pub fn check_homomorphism(&self, anti: bool) -> Report {
        Report::new(vec![self.multiplicativity_check(anti)])
    }

    /// As [`check_homomorphism`](Self::check_homomorphism), plus `m(1) = 1`; for maps known to be onto.
    pub fn check_homomorphism_unital(&self, anti: bool) -> Report {
        Report::new(vec![self.multiplicativity_check(anti), self.unit_check()])
    }

    pub(crate) fn multiplicativity_check(&self, anti: bool) -> Check {
        let d = self.domain.dim();
        let images = self.images();
        let products = self.image_products(&images);
        let witnesses: Vec<Witness> = (0..d * d)
            .into_par_iter()
            .filter_map(|ij| {
                let (i, j) = (ij / d, ij % d);
                let lhs = self.apply_sparse(self.domain.basis_product(i, j));
                let rhs = if anti { &products[j * d + i] } else { &products[ij] };
                (lhs != *rhs).then(|| Witness::new(vec![i, j], vec![self.label(i), self.label(j)], &lhs, rhs))
            })
            .collect();
        Check::from_witnesses(
            if anti { "anti_homomorphism" } else { "homomorphism" },
            d * d,
            witnesses,
        )
    }

    pub(crate) fn unit_check(&self) -> Check {
        let lhs = self.apply_vec(self.domain.identity());
        let rhs = self.codomain.identity();
        let witnesses = if lhs == rhs {
            vec![]
        } else {
            vec![Witness::new(vec![], vec!["1".into()], &lhs, rhs)]
        };
        Check::from_witnesses("unit", 1, witnesses)
    }

    /// Polarized Jordan identities on all basis pairs and triples. Refused over
    /// a ring with 2-torsion unless `allow_torsion` is set.
    pub fn check_jordan(&self, allow_torsion: bool) -> Result<Report> {
        self.codomain.ring().require_two_torsionfree(allow_torsion)?;
        Ok(self.jordan_report())
    }

    pub(crate) fn jordan_report(&self) -> Report {
        let d = self.domain.dim();
        let images = self.images();
        let products = self.image_products(&images);

        let pair: Vec<Witness> = (0..d)
            .into_par_iter()
            .flat_map_iter(|i| (i..d).map(move |j| (i, j)))
            .filter_map(|(i, j)| {
                let sym = self.domain_sum(self.domain.basis_product(i, j), self.domain.basis_product(j, i));
                let lhs = self.apply_sparse(&sym);
                let rhs = add_vec(&products[i * d + j], &products[j * d + i]);
                (lhs != rhs).then(|| Witness::new(vec![i, j], vec![self.label(i), self.label(j)], &lhs, &rhs))
            })
            .collect();

        let right_mul: Vec<Matrix> = images.par_iter().map(|m| self.codomain.right_mul_matrix(m)).collect();
        let triple: Vec<Witness> = (0..d)
            .into_par_iter()
            .flat_map_iter(|i| (0..d).flat_map(move |j| (i..d).map(move |k| (i, j, k))))
            .filter_map(|(i, j, k)| {
                let abc = self.domain_triple(i, j, k);
                let cba = self.domain_triple(k, j, i);
                let lhs = self.apply_sparse(&self.domain_sum(&abc, &cba));
                let rhs = add_vec(
                    &right_mul[k].mul_vec(&products[i * d + j]),
                    &right_mul[i].mul_vec(&products[k * d + j]),
                );
                (lhs != rhs).then(|| {
                    Witness::new(
                        vec![i, j, k],
                        vec![self.label(i), self.label(j), self.label(k)],
                        &lhs,
                        &rhs,
                    )
                })
            })
            .collect();

        Report::new(vec![
            Check::from_witnesses("jordan_pair", d * (d + 1) / 2, pair),
            Check::from_witnesses("jordan_triple", d * d * (d + 1) / 2, triple),
        ])
    }

    fn domain_sum(&self, a: &[(usize, RingValue)], b: &[(usize, RingValue)]) -> Vec<(usize, RingValue)> {
        let mut dense = self.domain.zero_vec();
        for (k, v) in a.iter().chain(b) {
            dense[*k] += v;
        }
        dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
    }

    /// `b_i b_j b_k` in the domain, sparse.
    fn domain_triple(&self, i: usize, j: usize, k: usize) -> Vec<(usize, RingValue)> {
        let mut dense = self.domain.zero_vec();
        for (l, c) in self.domain.basis_product(i, j) {
            for (m, c2) in self.domain.basis_product(*l, k) {
                dense[*m] += &(c * c2);
            }
        }
        dense.into_iter().enumerate().filter(|(_, v)| !v.is_zero()).collect()
    }
}
