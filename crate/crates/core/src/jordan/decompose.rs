use std::sync::Arc;

use serde::Serialize;

use super::{mutual_annihilation_failures, near_sum_build, NearSumSplit};
use crate::algebra::{add_vec, AlgElem, FinSeries, IncidenceAlgebra, StructAlgebra};
use crate::error::{Error, Result};
use crate::linmap::{same_algebra, LinMap};
use crate::report::{Check, Report, Witness};
use crate::ring::RingValue;

/// Which half of the near-sum a computation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// The homomorphism, built from `phi(e_x) phi(f) phi(e_y)`.
    Psi,
    /// The anti-homomorphism, built from `phi(e_y) phi(f) phi(e_x)`.
    Theta,
}

/// `phi` together with the two maps it splits into and the verification record.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub phi: LinMap,
    pub psi_tilde: LinMap,
    pub theta_tilde: LinMap,
    pub split: NearSumSplit,
    pub report: Report,
}

/// An invertible linear map `phi: FI(X, R) -> A` with its inverse and the
/// images `phi(e_x)` precomputed.
///
/// Construction enforces the standing hypotheses that need no Jordan check:
/// a 2-torsionfree ring (unless overridden) and invertibility over `R`.
#[derive(Debug, Clone)]
pub struct JordanEngine {
    fi: IncidenceAlgebra,
    phi: LinMap,
    phi_inv: LinMap,
    idempotents: Vec<Vec<RingValue>>,
    psi: LinMap,
    theta: LinMap,
}

impl JordanEngine {
    pub fn new(fi: &IncidenceAlgebra, phi: LinMap, allow_torsion: bool) -> Result<Self> {
        phi.codomain().ring().require_two_torsionfree(allow_torsion)?;
        if !same_algebra(phi.domain(), fi.algebra()) {
            return Err(Error::ContextMismatch(
                "map is not defined on this incidence algebra".into(),
            ));
        }
        if phi.codomain().dim() != fi.dim() {
            return Err(Error::NotInvertible(fi.ring(), "0 (dimensions differ)".into()));
        }
        let phi_inv = phi.invert()?;
        let idempotents: Vec<_> = fi.basis().diagonal_indices().map(|x| phi.column(x)).collect();
        let (psi, theta) = sandwich_maps(fi, &phi, &idempotents)?;
        Ok(JordanEngine {
            fi: fi.clone(),
            phi,
            phi_inv,
            idempotents,
            psi,
            theta,
        })
    }

    pub fn incidence(&self) -> &IncidenceAlgebra {
        &self.fi
    }

    pub fn phi(&self) -> &LinMap {
        &self.phi
    }

    pub fn phi_inv(&self) -> &LinMap {
        &self.phi_inv
    }

    pub fn codomain(&self) -> &Arc<StructAlgebra> {
        self.phi.codomain()
    }

    /// `phi(e_x)`.
    pub fn idempotent_image(&self, x: usize) -> &[RingValue] {
        &self.idempotents[x]
    }

    /// The linear extension of `psi` (production path; defined for any invertible `phi`).
    pub fn psi_tilde(&self) -> &LinMap {
        &self.psi
    }

    pub fn theta_tilde(&self) -> &LinMap {
        &self.theta
    }

    pub fn side_map(&self, side: Side) -> &LinMap {
        match side {
            Side::Psi => &self.psi,
            Side::Theta => &self.theta,
        }
    }

    /// Requires `phi` to pass the Jordan check, then returns the verified decomposition.
    pub fn decompose(&self) -> Result<Decomposition> {
        let jordan = self.phi.jordan_report();
        if !jordan.all_pass() {
            return Err(Error::NotJordan(jordan.witness_count()));
        }
        let mut d = Decomposition {
            phi: self.phi.clone(),
            psi_tilde: self.psi.clone(),
            theta_tilde: self.theta.clone(),
            split: NearSumSplit::for_incidence(&self.fi),
            report: Report::default(),
        };
        d.report = verify_near_sum(&d);
        Ok(d)
    }

    /// `phi(e_x) a phi(e_y)`
    pub fn sandwich(&self, x: usize, a: &[RingValue], y: usize) -> Vec<RingValue> {
        let alg = self.codomain();
        alg.mul(&alg.mul(&self.idempotents[x], a), &self.idempotents[y])
    }

    /// The series `g` (for `Psi`) or `h` (for `Theta`) with
    /// `g(x, y) = phi^-1(phi(e_x) phi(f_Z) phi(e_y))(x, y)` and
    /// `h(x, y) = phi^-1(phi(e_y) phi(f_Z) phi(e_x))(x, y)` on strict pairs.
    pub fn extension_series(&self, f: &FinSeries, side: Side) -> Result<FinSeries> {
        let (_, f_z) = f.split_diag();
        let image = self.phi.apply_vec(&self.fi.coord_vec(&f_z)?);
        let basis = self.fi.basis();
        let mut entries = Vec::new();
        for i in basis.strict_indices() {
            let (x, y) = basis.pair(i);
            let a = match side {
                Side::Psi => self.sandwich(x, &image, y),
                Side::Theta => self.sandwich(y, &image, x),
            };
            let coeff = self.phi_inv.apply_vec(&a).swap_remove(i);
            entries.push(((x, y), coeff));
        }
        FinSeries::from_entries(self.fi.poset().clone(), self.fi.ring(), entries)
    }

    /// The pointwise construction through `phi^-1`: `phi(f_D) + phi(g)`, with
    /// `g` from [`extension_series`](Self::extension_series). An oracle for
    /// `apply(psi_tilde, f)` (resp. `theta_tilde`).
    pub fn extend_via_inverse(&self, f: &FinSeries, side: Side) -> Result<AlgElem> {
        let (f_d, _) = f.split_diag();
        let g = self.extension_series(f, side)?;
        let v = add_vec(
            &self.phi.apply_vec(&self.fi.coord_vec(&f_d)?),
            &self.phi.apply_vec(&self.fi.coord_vec(&g)?),
        );
        Ok(AlgElem::from_parts(self.codomain().clone(), v))
    }

    /// Decides `a = b` through the idempotent sandwiches: for all `x < y`
    /// `phi(e_x) a phi(e_y) + phi(e_y) a phi(e_x)` and for all `x`
    /// `phi(e_x) a phi(e_x)` agree with the same expressions in `b`.
    pub fn sandwich_equal(&self, a: &[RingValue], b: &[RingValue]) -> bool {
        let basis = self.fi.basis();
        basis.pairs().iter().all(|&(x, y)| {
            if x == y {
                self.sandwich(x, a, x) == self.sandwich(x, b, x)
            } else {
                add_vec(&self.sandwich(x, a, y), &self.sandwich(y, a, x))
                    == add_vec(&self.sandwich(x, b, y), &self.sandwich(y, b, x))
            }
        })
    }
}

fn sandwich_maps(fi: &IncidenceAlgebra, phi: &LinMap, idem: &[Vec<RingValue>]) -> Result<(LinMap, LinMap)> {
    let alg = phi.codomain();
    let mut psi = Vec::with_capacity(fi.dim());
    let mut theta = Vec::with_capacity(fi.dim());
    for (i, &(x, y)) in fi.basis().pairs().iter().enumerate() {
        let col = phi.column(i);
        if x == y {
            psi.push(col.clone());
            theta.push(col);
        } else {
            psi.push(alg.mul(&alg.mul(&idem[x], &col), &idem[y]));
            theta.push(alg.mul(&alg.mul(&idem[y], &col), &idem[x]));
        }
    }
    Ok((
        LinMap::new(fi.algebra().clone(), alg.clone(), &psi)?,
        LinMap::new(fi.algebra().clone(), alg.clone(), &theta)?,
    ))
}

/// Decomposes a Jordan isomorphism of `FI(X, R)` into the near-sum of a
/// homomorphism and an anti-homomorphism.
pub fn decompose(fi: &IncidenceAlgebra, phi: &LinMap, allow_torsion: bool) -> Result<Decomposition> {
    JordanEngine::new(fi, phi.clone(), allow_torsion)?.decompose()
}

/// The five near-sum conditions, each checked exactly and reported on its own.
pub fn verify_near_sum(d: &Decomposition) -> Report {
    let labels = d.phi.domain().labels();
    let mut psi_hom = d.psi_tilde.multiplicativity_check(false);
    psi_hom.name = "psi_homomorphism".into();
    let mut theta_anti = d.theta_tilde.multiplicativity_check(true);
    theta_anti.name = "theta_anti_homomorphism".into();

    let mut agree = Vec::new();
    for &i in d.split.diagonal() {
        let phi = d.phi.column(i);
        for other in [d.psi_tilde.column(i), d.theta_tilde.column(i)] {
            if other != phi {
                agree.push(Witness::new(vec![i], vec![labels[i].clone()], &other, &phi));
            }
        }
    }

    let mut sum = Vec::new();
    for &i in d.split.strict() {
        let phi = d.phi.column(i);
        let parts = add_vec(&d.psi_tilde.column(i), &d.theta_tilde.column(i));
        if parts != phi {
            sum.push(Witness::new(vec![i], vec![labels[i].clone()], &parts, &phi));
        }
    }

    let strict = d.split.strict();
    let annihilation = mutual_annihilation_failures(&d.psi_tilde, &d.theta_tilde, strict);

    Report::new(vec![
        psi_hom,
        theta_anti,
        Check::from_witnesses("diagonal_agreement", d.split.diagonal().len(), agree),
        Check::from_witnesses("strict_sum", strict.len(), sum),
        Check::from_witnesses("mutual_annihilation", strict.len() * strict.len(), annihilation),
    ])
}

impl Decomposition {
    /// `near_sum_build(psi_tilde, theta_tilde, split)`.
    pub fn recompose(&self) -> Result<LinMap> {
        near_sum_build(&self.psi_tilde, &self.theta_tilde, &self.split)
    }
}
