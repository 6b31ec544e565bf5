//! Jordan isomorphisms of incidence algebras and their decomposition into the
//! near-sum of a homomorphism and an anti-homomorphism.
//!
//! For a Jordan isomorphism `phi` of `FI(X, R)` onto an algebra `A`, the maps
//!
//! ```text
//! psi(e_x)  = phi(e_x)                      theta(e_x)  = phi(e_x)
//! psi(e_xy) = phi(e_x) phi(e_xy) phi(e_y)   theta(e_xy) = phi(e_y) phi(e_xy) phi(e_x)
//! ```
//!
//! extended linearly are a homomorphism and an anti-homomorphism, they agree
//! with `phi` on the diagonal subalgebra, annihilate each other on the strict
//! ideal, and add up to `phi` there. On a finite poset the matrix units are a
//! basis, so this linear extension is the production path; the pointwise
//! construction through `phi^-1` is kept as an independent oracle
//! ([`JordanEngine::extend_via_inverse`]).

mod decompose;
mod identities;

pub use decompose::{decompose, verify_near_sum, Decomposition, JordanEngine, Side};
pub use identities::{verify_paper_identities, IdentityOptions};

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{FinSeries, IncidenceAlgebra, StructAlgebra};
use crate::error::{Error, Result, Violation};
use crate::linmap::{same_algebra, LinMap};
use crate::poset::{order_isomorphisms, OrderMap, Poset};
use crate::random::random_unit_series;
use crate::report::Witness;

/// Components larger than this keep the identity in [`random_jordan_iso`]
/// instead of enumerating their (anti-)automorphisms.
pub const MAX_ENUMERATED_COMPONENT: usize = 8;

/// A vector-space splitting `A = A_0 + A_1` of a structure-constant algebra by
/// basis indices, with `A_0` a subalgebra and `A_1` an ideal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearSumSplit {
    algebra: Arc<StructAlgebra>,
    diagonal: Vec<usize>,
    strict: Vec<usize>,
}

impl NearSumSplit {
    pub fn new(algebra: Arc<StructAlgebra>, diagonal: Vec<usize>, strict: Vec<usize>) -> Result<Self> {
        let d = algebra.dim();
        let mut block = vec![None; d];
        for (b, list) in [(0u8, &diagonal), (1, &strict)] {
            for &i in list {
                if i >= d || block[i].replace(b).is_some() {
                    return Err(Error::Invalid(format!(
                        "basis index {i} is out of range or listed twice"
                    )));
                }
            }
        }
        if let Some(i) = block.iter().position(Option::is_none) {
            return Err(Error::Invalid(format!("basis index {i} is in neither block")));
        }
        for i in 0..d {
            for j in 0..d {
                let inside_strict = block[i] == Some(1) || block[j] == Some(1);
                for (k, _) in algebra.basis_product(i, j) {
                    if inside_strict && block[*k] != Some(1) {
                        return Err(Error::Invalid(format!("strict block is not an ideal at ({i}, {j})")));
                    }
                    if !inside_strict && block[*k] != Some(0) {
                        return Err(Error::Invalid(format!(
                            "diagonal block is not a subalgebra at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(NearSumSplit {
            algebra,
            diagonal,
            strict,
        })
    }

    /// `D(X, R) + FZ(X, R)` in the matrix-unit basis.
    pub fn for_incidence(fi: &IncidenceAlgebra) -> Self {
        NearSumSplit {
            algebra: fi.algebra().clone(),
            diagonal: fi.basis().diagonal_indices().collect(),
            strict: fi.basis().strict_indices().collect(),
        }
    }

    pub fn algebra(&self) -> &Arc<StructAlgebra> {
        &self.algebra
    }

    pub fn diagonal(&self) -> &[usize] {
        &self.diagonal
    }

    pub fn strict(&self) -> &[usize] {
        &self.strict
    }
}

/// `e_xy -> e_{m(x) m(y)}`, or `e_xy -> e_{m(y) m(x)}` for a reversing map.
pub fn from_order_map(m: &OrderMap, source: &IncidenceAlgebra, target: &IncidenceAlgebra) -> Result<LinMap> {
    if **m.source() != **source.poset() || **m.target() != **target.poset() {
        return Err(Error::ContextMismatch(
            "order map does not match the algebras' posets".into(),
        ));
    }
    if source.ring() != target.ring() {
        return Err(Error::SpecMismatch(source.ring(), target.ring()));
    }
    let columns: Vec<_> = source
        .basis()
        .pairs()
        .iter()
        .map(|&(x, y)| {
            let (u, v) = if m.is_reversing() {
                (m.image(y), m.image(x))
            } else {
                (m.image(x), m.image(y))
            };
            target
                .algebra()
                .basis_vec(target.basis().index_of(u, v).expect("order map respects the order"))
        })
        .collect();
    LinMap::new(source.algebra().clone(), target.algebra().clone(), &columns)
}

/// The inner automorphism `f -> u f u^-1`.
pub fn conjugate_by_unit(u: &FinSeries, fi: &IncidenceAlgebra) -> Result<LinMap> {
    let u_inv = u.try_inverse()?;
    let mut columns = Vec::with_capacity(fi.dim());
    for &(x, y) in fi.basis().pairs() {
        let e = FinSeries::unit_series(fi.poset().clone(), fi.ring(), x, y)?;
        columns.push(fi.coord_vec(&u.convolve(&e)?.convolve(&u_inv)?)?);
    }
    LinMap::new(fi.algebra().clone(), fi.algebra().clone(), &columns)
}

/// The near-sum of `psi` and `theta`: `psi` on the diagonal block and
/// `psi + theta` on the strict block. Every violated precondition is reported.
pub fn near_sum_build(psi: &LinMap, theta: &LinMap, split: &NearSumSplit) -> Result<LinMap> {
    if !same_algebra(psi.domain(), split.algebra()) || !same_algebra(theta.domain(), split.algebra()) {
        return Err(Error::ContextMismatch(
            "maps are not defined on the split algebra".into(),
        ));
    }
    if !same_algebra(psi.codomain(), theta.codomain()) {
        return Err(Error::ContextMismatch("psi and theta have different codomains".into()));
    }
    let mut violations = Vec::new();
    let hom = psi.multiplicativity_check(false);
    if !hom.pass {
        violations.push(violation("psi is a homomorphism", &hom.witnesses));
    }
    let anti = theta.multiplicativity_check(true);
    if !anti.pass {
        violations.push(violation("theta is an anti-homomorphism", &anti.witnesses));
    }
    let disagree: Vec<Vec<usize>> = split
        .diagonal()
        .iter()
        .filter(|&&i| psi.column(i) != theta.column(i))
        .map(|&i| vec![i])
        .collect();
    if !disagree.is_empty() {
        violations.push(Violation {
            clause: "psi and theta agree on the diagonal block".into(),
            witnesses: disagree,
        });
    }
    let annihilation = mutual_annihilation_failures(psi, theta, split.strict());
    if !annihilation.is_empty() {
        violations.push(violation(
            "psi and theta annihilate each other on the strict block",
            &annihilation,
        ));
    }
    if !violations.is_empty() {
        return Err(Error::PreconditionFailed(violations));
    }
    let codomain = psi.codomain();
    let mut columns = psi.columns();
    for &i in split.strict() {
        columns[i] = crate::algebra::add_vec(&columns[i], &theta.column(i));
    }
    LinMap::new(psi.domain().clone(), codomain.clone(), &columns)
}

fn violation(clause: &str, witnesses: &[Witness]) -> Violation {
    Violation {
        clause: clause.into(),
        witnesses: witnesses.iter().map(|w| w.indices.clone()).collect(),
    }
}

/// Pairs `(i, j)` of strict indices with `psi(b_i) theta(b_j) != 0` or `theta(b_i) psi(b_j) != 0`.
pub(crate) fn mutual_annihilation_failures(psi: &LinMap, theta: &LinMap, strict: &[usize]) -> Vec<Witness> {
    let codomain = psi.codomain();
    let labels = psi.domain().labels();
    let psi_cols: Vec<_> = strict.iter().map(|&i| psi.column(i)).collect();
    let theta_cols: Vec<_> = strict.iter().map(|&i| theta.column(i)).collect();
    let zero = codomain.zero_vec();
    let mut out = Vec::new();
    for (a, &i) in strict.iter().enumerate() {
        for (b, &j) in strict.iter().enumerate() {
            let pt = codomain.mul(&psi_cols[a], &theta_cols[b]);
            let tp = codomain.mul(&theta_cols[a], &psi_cols[b]);
            for prod in [pt, tp] {
                if prod != zero {
                    out.push(Witness::new(
                        vec![i, j],
                        vec![labels[i].clone(), labels[j].clone()],
                        &prod,
                        &zero,
                    ));
                }
            }
        }
    }
    out
}

/// A Jordan automorphism of `FI(X, R)` built from `seed`: on each connected
/// component an automorphism or (when one exists, by coin flip) an
/// anti-automorphism of the component, assembled as a near-sum, then composed
/// with conjugation by a random unit.
pub fn random_jordan_iso(fi: &IncidenceAlgebra, seed: u64) -> Result<LinMap> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let poset = fi.poset();
    let n = poset.len();
    let mut images: Vec<usize> = (0..n).collect();
    let mut reversing = vec![false; n];
    for component in poset.components() {
        let (sigma, rev) = pick_component_map(poset, &component, &mut rng)?;
        for (a, &x) in component.iter().enumerate() {
            images[x] = component[sigma[a]];
            reversing[x] = rev;
        }
    }
    let algebra = fi.algebra();
    let zero = algebra.zero_vec();
    let mut psi_cols = Vec::with_capacity(fi.dim());
    let mut theta_cols = Vec::with_capacity(fi.dim());
    for &(x, y) in fi.basis().pairs() {
        let unit =
            |u: usize, v: usize| algebra.basis_vec(fi.basis().index_of(u, v).expect("order map respects the order"));
        if x == y {
            psi_cols.push(unit(images[x], images[x]));
            theta_cols.push(unit(images[x], images[x]));
        } else if reversing[x] {
            psi_cols.push(zero.clone());
            theta_cols.push(unit(images[y], images[x]));
        } else {
            psi_cols.push(unit(images[x], images[y]));
            theta_cols.push(zero.clone());
        }
    }
    let psi = LinMap::new(algebra.clone(), algebra.clone(), &psi_cols)?;
    let theta = LinMap::new(algebra.clone(), algebra.clone(), &theta_cols)?;
    let base = near_sum_build(&psi, &theta, &NearSumSplit::for_incidence(fi))?;
    let u = random_unit_series(fi, &mut rng);
    LinMap::compose(&conjugate_by_unit(&u, fi)?, &base)
}

/// Returns positions (within `component`) of the images and whether the map reverses order.
fn pick_component_map(poset: &Poset, component: &[usize], rng: &mut ChaCha8Rng) -> Result<(Vec<usize>, bool)> {
    if component.len() > MAX_ENUMERATED_COMPONENT {
        return Ok(((0..component.len()).collect(), false));
    }
    let sub = Arc::new(poset.induced(component));
    let autos = order_isomorphisms(&sub, &sub, false)?;
    let antis = order_isomorphisms(&sub, &sub, true)?;
    let rev = !antis.is_empty() && rng.gen_bool(0.5);
    let choices = if rev { &antis } else { &autos };
    let chosen = choices.choose(rng).expect("the identity is always an automorphism");
    Ok((chosen.images().to_vec(), rev))
}
