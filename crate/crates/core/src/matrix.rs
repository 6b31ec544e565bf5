//! Dense exact matrices over a [`RingSpec`], with determinant and inverse.
//!
//! Inversion never assumes a field. Over the rationals it is ordinary
//! Gauss-Jordan elimination. Over the integers and residue rings the matrix is
//! lifted to the integers and reduced by fraction-free (Bareiss) Gauss-Jordan
//! elimination, which leaves `det * A^-1` with integer entries; the inverse
//! exists exactly when the determinant is a unit of the ring.

#![allow(clippy::needless_range_loop)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::ring::{RingSpec, RingValue};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: RingSpec,
    rows: usize,
    cols: usize,
    data: Vec<RingValue>,
}

impl Matrix {
    pub fn zeros(ring: RingSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            ring,
            rows,
            cols,
            data: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: RingSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = ring.one();
        }
        m
    }

    /// Builds a `rows x columns.len()` matrix from its columns.
    pub fn from_columns(ring: RingSpec, rows: usize, columns: &[Vec<RingValue>]) -> Result<Self> {
        let mut m = Matrix::zeros(ring, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::SizeMismatch(col.len(), rows));
            }
            for (i, v) in col.iter().enumerate() {
                if v.spec() != ring {
                    return Err(Error::SpecMismatch(v.spec(), ring));
                }
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn ring(&self) -> RingSpec {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &RingValue {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: RingValue) {
        assert_eq!(v.spec(), self.ring, "ring mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> Vec<RingValue> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<RingValue>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul_vec(&self, v: &[RingValue]) -> Vec<RingValue> {
        assert_eq!(v.len(), self.cols, "dimension mismatch");
        let mut out = vec![self.ring.zero(); self.rows];
        for (j, vj) in v.iter().enumerate() {
            if vj.is_zero() {
                continue;
            }
            for (i, o) in out.iter_mut().enumerate() {
                let a = self.get(i, j);
                if !a.is_zero() {
                    *o += &(a * vj);
                }
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch");
        assert_eq!(self.ring, rhs.ring, "ring mismatch");
        let mut out = Matrix::zeros(self.ring, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += &(a * b);
                    }
                }
            }
        }
        out
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols {
            return Err(Error::SizeMismatch(self.rows, self.cols));
        }
        Ok(self.rows)
    }

    pub fn determinant(&self) -> Result<RingValue> {
        let n = self.require_square()?;
        Ok(match self.ring {
            RingSpec::Rationals => {
                let mut a = self.rationals();
                RingValue::Rat(rational_elimination(&mut a, n, n))
            }
            _ => {
                let mut a = self.lifted(0);
                RingValue::from_bigint(self.ring, &bareiss_jordan(&mut a, n, n))
            }
        })
    }

    /// Exact two-sided inverse, or `NotInvertible` when the determinant is not a unit.
    pub fn inverse(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        let width = 2 * n;
        match self.ring {
            RingSpec::Rationals => {
                let mut a = self.rationals_augmented();
                let det = rational_elimination(&mut a, n, width);
                if det.is_zero() {
                    return Err(Error::NotInvertible(self.ring, "0/1".into()));
                }
                let mut out = Matrix::zeros(self.ring, n, n);
                for i in 0..n {
                    for j in 0..n {
                        out.data[i * n + j] = RingValue::Rat(a[i][n + j].clone());
                    }
                }
                Ok(out)
            }
            _ => {
                let mut a = self.lifted(n);
                let det = bareiss_jordan(&mut a, n, width);
                let det_ring = RingValue::from_bigint(self.ring, &det);
                if !det_ring.is_unit() {
                    return Err(Error::NotInvertible(self.ring, det_ring.to_string()));
                }
                // The right block is pivot * A^-1, the pivot being det up to sign.
                let pivot = if n == 0 { BigInt::one() } else { a[0][0].clone() };
                let scale = RingValue::from_bigint(self.ring, &pivot).try_invert()?;
                let mut out = Matrix::zeros(self.ring, n, n);
                for i in 0..n {
                    for j in 0..n {
                        out.data[i * n + j] = &RingValue::from_bigint(self.ring, &a[i][n + j]) * &scale;
                    }
                }
                Ok(out)
            }
        }
    }

    fn rationals(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| match self.get(i, j) {
                        RingValue::Rat(v) => v.clone(),
                        _ => unreachable!("rational matrix"),
                    })
                    .collect()
            })
            .collect()
    }

    fn rationals_augmented(&self) -> Vec<Vec<BigRational>> {
        let n = self.rows;
        let mut a = self.rationals();
        for (i, row) in a.iter_mut().enumerate() {
            row.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
        }
        a
    }

    /// Integer lift, optionally augmented by an identity block of width `extra`.
    fn lifted(&self, extra: usize) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let mut row: Vec<BigInt> = (0..self.cols)
                    .map(|j| self.get(i, j).to_bigint().expect("integral entry"))
                    .collect();
                row.extend((0..extra).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
                row
            })
            .collect()
    }
}

/// Gauss-Jordan over the rationals on the leading `n x n` block of an `n x width`
/// matrix; returns the determinant of that block and, when it is nonzero,
/// leaves the leading block reduced to the identity.
fn rational_elimination(a: &mut [Vec<BigRational>], n: usize, width: usize) -> BigRational {
    let mut det = BigRational::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigRational::zero();
        };
        if p != k {
            a.swap(p, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        det *= &pivot;
        let inv = pivot.recip();
        for j in k..width {
            a[k][j] = &a[k][j] * &inv;
        }
        for i in 0..n {
            if i == k || a[i][k].is_zero() {
                continue;
            }
            let factor = a[i][k].clone();
            for j in k..width {
                let t = &factor * &a[k][j];
                a[i][j] -= t;
            }
        }
    }
    det
}

/// Fraction-free Gauss-Jordan elimination on the leading `n x n` block of an
/// `n x width` integer matrix. Every division is exact. On success each
/// diagonal entry equals the final pivot `s * det` (s the permutation sign)
/// and the trailing columns are multiplied by it. Returns the determinant of
/// the leading block.
fn bareiss_jordan(a: &mut [Vec<BigInt>], n: usize, width: usize) -> BigInt {
    let mut prev = BigInt::one();
    let mut negate = false;
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in 0..n {
            if i == k {
                continue;
            }
            for j in 0..width {
                if j == k {
                    continue;
                }
                let v = (&a[k][k] * &a[i][j] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
            a[i][k] = BigInt::zero();
        }
        prev = a[k][k].clone();
    }
    if negate {
        -prev
    } else {
        prev
    }
}
