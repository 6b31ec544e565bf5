//! Exact evaluation of the intermediate identities behind the near-sum
//! decomposition, for one map `phi` and a seeded corpus of series.
//!
//! Each identity is its own check. Quantifiers over all of `FI(X, R)` are
//! replaced by a corpus of random series; quantifiers over points of `X` are
//! exhausted; quantifiers over subsets `W` are sampled.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::decompose::{JordanEngine, Side};
use crate::algebra::{add_vec, is_zero_vec, scale_vec, sub_vec, FinSeries, IncidenceAlgebra, Truncation};
use crate::error::Result;
use crate::linmap::LinMap;
use crate::random::random_series;
use crate::report::{Check, Report, Witness};
use crate::ring::RingValue;

/// Corpus sizes for [`verify_paper_identities`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdentityOptions {
    pub seed: u64,
    /// Random series in the corpus.
    pub samples: usize,
    /// Random subsets `W` per point pair, on top of the fixed ones.
    pub w_samples: usize,
    /// Random 5-tuples for the five-factor identity.
    pub quintuples: usize,
}

impl Default for IdentityOptions {
    fn default() -> Self {
        IdentityOptions {
            seed: 0,
            samples: 4,
            w_samples: 2,
            quintuples: 24,
        }
    }
}

type Vector = Vec<RingValue>;

struct Acc {
    name: &'static str,
    instances: usize,
    witnesses: Vec<Witness>,
}

impl Acc {
    fn new(name: &'static str) -> Self {
        Acc {
            name,
            instances: 0,
            witnesses: Vec::new(),
        }
    }

    fn eq(&mut self, indices: &[usize], at: impl FnOnce() -> Vec<String>, lhs: &[RingValue], rhs: &[RingValue]) {
        self.instances += 1;
        if lhs != rhs {
            self.witnesses.push(Witness::new(indices.to_vec(), at(), lhs, rhs));
        }
    }

    fn zero(&mut self, indices: &[usize], at: impl FnOnce() -> Vec<String>, lhs: &[RingValue]) {
        self.instances += 1;
        if !is_zero_vec(lhs) {
            let zero = vec![lhs[0].spec().zero(); lhs.len()];
            self.witnesses.push(Witness::new(indices.to_vec(), at(), lhs, &zero));
        }
    }

    fn finish(self) -> Check {
        Check::from_witnesses(self.name, self.instances, self.witnesses)
    }
}

struct Ctx<'a> {
    eng: &'a JordanEngine,
    fi: &'a IncidenceAlgebra,
    opts: IdentityOptions,
    n: usize,
    corpus: Vec<FinSeries>,
    strict: Vec<FinSeries>,
    /// `phi`, `psi_tilde`, `theta_tilde` of each corpus series.
    phi_of: Vec<Vector>,
    psi_of: Vec<Vector>,
    theta_of: Vec<Vector>,
    /// The same for the strict parts.
    phi_z: Vec<Vector>,
    psi_z: Vec<Vector>,
    theta_z: Vec<Vector>,
}

/// Evaluates every intermediate identity behind the near-sum decomposition
/// of `phi`. Needs `phi` invertible (and the ring 2-torsionfree
/// unless `allow_torsion`); a map that is not Jordan is evaluated anyway and
/// fails with witnesses.
pub fn verify_paper_identities(
    fi: &IncidenceAlgebra,
    phi: &LinMap,
    allow_torsion: bool,
    opts: &IdentityOptions,
) -> Result<Report> {
    let eng = JordanEngine::new(fi, phi.clone(), allow_torsion)?;
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let corpus: Vec<FinSeries> = (0..opts.samples).map(|_| random_series(fi, &mut rng, 2, 3)).collect();
    let strict: Vec<FinSeries> = corpus.iter().map(|f| f.split_diag().1).collect();
    let img = |m: &LinMap, fs: &[FinSeries]| -> Vec<Vector> {
        fs.iter()
            .map(|f| m.apply_vec(&fi.coord_vec(f).expect("corpus lives in fi")))
            .collect()
    };
    let ctx = Ctx {
        eng: &eng,
        fi,
        opts: *opts,
        n: fi.poset().len(),
        phi_of: img(eng.phi(), &corpus),
        psi_of: img(eng.psi_tilde(), &corpus),
        theta_of: img(eng.theta_tilde(), &corpus),
        phi_z: img(eng.phi(), &strict),
        psi_z: img(eng.psi_tilde(), &strict),
        theta_z: img(eng.theta_tilde(), &strict),
        corpus,
        strict,
    };

    type CheckFn = fn(&Ctx) -> Check;
    let checks: [CheckFn; 25] = [
        square,
        triple,
        polarized_triple,
        five_factor,
        idempotent_commutation,
        idempotent_annihilation,
        sandwich_strict,
        sandwich_diagonal,
        equality_criterion,
        diagonal_homomorphism,
        psi_sandwich,
        psi_tilde_sandwich,
        theta_tilde_sandwich,
        extension_agrees,
        oracle_equivalence,
        g_strict,
        inverse_sandwich,
        psi_annihilation,
        theta_annihilation,
        psi_truncation,
        theta_truncation,
        psi_multiplicative,
        theta_antimultiplicative,
        mutual_annihilation,
        near_sum,
    ];
    Ok(Report::new(checks.par_iter().map(|c| c(&ctx)).collect()))
}

impl Ctx<'_> {
    fn mul(&self, a: &[RingValue], b: &[RingValue]) -> Vector {
        self.eng.codomain().mul(a, b)
    }

    fn mul3(&self, a: &[RingValue], b: &[RingValue], c: &[RingValue]) -> Vector {
        self.mul(&self.mul(a, b), c)
    }

    /// Product in the domain `FI(X, R)`, on coordinates.
    fn dmul(&self, a: &[RingValue], b: &[RingValue]) -> Vector {
        self.fi.algebra().mul(a, b)
    }

    fn coords(&self, f: &FinSeries) -> Vector {
        self.fi.coord_vec(f).expect("series lives in fi")
    }

    fn phi(&self, a: &[RingValue]) -> Vector {
        self.eng.phi().apply_vec(a)
    }

    fn p(&self, x: usize) -> &[RingValue] {
        self.eng.idempotent_image(x)
    }

    /// `phi(e_W)`.
    fn p_set(&self, w: &[usize]) -> Vector {
        w.iter()
            .fold(self.eng.codomain().zero_vec(), |acc, &x| add_vec(&acc, self.p(x)))
    }

    fn label(&self, x: usize) -> String {
        self.fi.poset().label(x).to_string()
    }

    fn set_label(&self, w: &[usize]) -> String {
        let names: Vec<_> = w.iter().map(|&x| self.label(x)).collect();
        format!("W={{{}}}", names.join(","))
    }

    fn unit(&self, x: usize, y: usize) -> Vector {
        self.fi
            .algebra()
            .basis_vec(self.fi.basis().index_of(x, y).expect("x <= y"))
    }

    fn leq_pairs(&self) -> &[(usize, usize)] {
        self.fi.basis().pairs()
    }

    fn strict_pairs(&self) -> &[(usize, usize)] {
        &self.fi.basis().pairs()[self.fi.basis().diagonal_len()..]
    }

    fn rng(&self, salt: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
    }

    fn random_subset(&self, rng: &mut ChaCha8Rng, allowed: &[usize]) -> Vec<usize> {
        allowed.iter().copied().filter(|_| rng.gen_bool(0.5)).collect()
    }

    /// A pool of domain elements for the multilinear identities: the corpus,
    /// the point idempotents and the matrix units of the first strict pair.
    fn pool(&self) -> Vec<(String, Vector)> {
        let mut pool: Vec<(String, Vector)> = self
            .corpus
            .iter()
            .enumerate()
            .map(|(i, f)| (format!("f{i}"), self.coords(f)))
            .collect();
        for x in 0..self.n {
            pool.push((format!("e({})", self.label(x)), self.unit(x, x)));
        }
        if let Some(&(x, y)) = self.strict_pairs().first() {
            pool.push((format!("e({},{})", self.label(x), self.label(y)), self.unit(x, y)));
        }
        pool
    }
}

fn square(c: &Ctx) -> Check {
    let mut acc = Acc::new("square");
    for (i, f) in c.corpus.iter().enumerate() {
        let a = c.coords(f);
        acc.eq(
            &[i],
            || vec![format!("f{i}")],
            &c.phi(&c.dmul(&a, &a)),
            &c.mul(&c.phi_of[i], &c.phi_of[i]),
        );
    }
    acc.finish()
}

fn triple(c: &Ctx) -> Check {
    let mut acc = Acc::new("triple");
    let pool = c.pool();
    for (i, (na, a)) in pool.iter().enumerate() {
        let pa = c.phi(a);
        for (j, (nb, b)) in pool.iter().enumerate() {
            let lhs = c.phi(&c.dmul(&c.dmul(a, b), a));
            let rhs = c.mul3(&pa, &c.phi(b), &pa);
            acc.eq(&[i, j], || vec![na.clone(), nb.clone()], &lhs, &rhs);
        }
    }
    acc.finish()
}

fn polarized_triple(c: &Ctx) -> Check {
    let mut acc = Acc::new("polarized_triple");
    let pool = c.pool();
    let images: Vec<Vector> = pool.iter().map(|(_, a)| c.phi(a)).collect();
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            for k in i..pool.len() {
                let (a, b, e) = (&pool[i].1, &pool[j].1, &pool[k].1);
                let lhs = c.phi(&add_vec(&c.dmul(&c.dmul(a, b), e), &c.dmul(&c.dmul(e, b), a)));
                let rhs = add_vec(
                    &c.mul3(&images[i], &images[j], &images[k]),
                    &c.mul3(&images[k], &images[j], &images[i]),
                );
                acc.eq(
                    &[i, j, k],
                    || vec![pool[i].0.clone(), pool[j].0.clone(), pool[k].0.clone()],
                    &lhs,
                    &rhs,
                );
            }
        }
    }
    acc.finish()
}

/// `phi(abcde + edabc + cbade + edcba)` against the matching sum of image products.
fn five_factor(c: &Ctx) -> Check {
    let mut acc = Acc::new("five_factor");
    let pool = c.pool();
    let images: Vec<Vector> = pool.iter().map(|(_, a)| c.phi(a)).collect();
    let mut rng = c.rng(5);
    for _ in 0..c.opts.quintuples {
        let t: Vec<usize> = (0..5).map(|_| rng.gen_range(0..pool.len())).collect();
        let dprod = |order: [usize; 5]| {
            order
                .iter()
                .skip(1)
                .fold(pool[t[order[0]]].1.clone(), |p, &s| c.dmul(&p, &pool[t[s]].1))
        };
        let iprod = |order: [usize; 5]| {
            order
                .iter()
                .skip(1)
                .fold(images[t[order[0]]].clone(), |p, &s| c.mul(&p, &images[t[s]]))
        };
        let orders = [[0, 1, 2, 3, 4], [4, 3, 0, 1, 2], [2, 1, 0, 3, 4], [4, 3, 2, 1, 0]];
        let lhs = c.phi(
            &orders
                .iter()
                .map(|&o| dprod(o))
                .reduce(|a, b| add_vec(&a, &b))
                .expect("four terms"),
        );
        let rhs = orders
            .iter()
            .map(|&o| iprod(o))
            .reduce(|a, b| add_vec(&a, &b))
            .expect("four terms");
        acc.eq(&t, || t.iter().map(|&s| pool[s].0.clone()).collect(), &lhs, &rhs);
    }
    acc.finish()
}

/// Idempotents `e_Y` against diagonal `f`, which commute with them:
/// `phi(f) phi(e_Y) = phi(e_Y) phi(f) = phi(f e_Y)`.
fn idempotent_commutation(c: &Ctx) -> Check {
    let mut acc = Acc::new("idempotent_commutation");
    let mut rng = c.rng(6);
    let all: Vec<usize> = (0..c.n).collect();
    let mut subsets: Vec<Vec<usize>> = all.iter().map(|&x| vec![x]).collect();
    subsets.push(all.clone());
    for _ in 0..c.opts.w_samples {
        subsets.push(c.random_subset(&mut rng, &all));
    }
    for (i, f) in c.corpus.iter().enumerate() {
        let d = c.coords(&f.split_diag().0);
        let pd = c.phi(&d);
        for w in &subsets {
            let e = c.fi.subset_idempotent_vec(w);
            let pe = c.phi(&e);
            let at = || vec![format!("f{i}_D"), c.set_label(w)];
            let target = c.phi(&c.dmul(&d, &e));
            acc.eq(&[i], at, &c.mul(&pd, &pe), &target);
            acc.eq(&[i], at, &c.mul(&pe, &pd), &target);
        }
    }
    acc.finish()
}

/// `e a = a e = 0` forces `phi(e) phi(a) = phi(a) phi(e) = 0`; here `a = e_V f e_V`
/// with `V` the complement of `Y`.
fn idempotent_annihilation(c: &Ctx) -> Check {
    let mut acc = Acc::new("idempotent_annihilation");
    let mut rng = c.rng(7);
    let all: Vec<usize> = (0..c.n).collect();
    let mut subsets: Vec<Vec<usize>> = all.iter().map(|&x| vec![x]).collect();
    for _ in 0..c.opts.w_samples {
        subsets.push(c.random_subset(&mut rng, &all));
    }
    for (i, f) in c.corpus.iter().enumerate() {
        let a0 = c.coords(f);
        for y in &subsets {
            let v: Vec<usize> = all.iter().copied().filter(|x| !y.contains(x)).collect();
            let ev = c.fi.subset_idempotent_vec(&v);
            let a = c.dmul(&c.dmul(&ev, &a0), &ev);
            let (pe, pa) = (c.phi(&c.fi.subset_idempotent_vec(y)), c.phi(&a));
            let at = || vec![format!("f{i}"), c.set_label(y)];
            acc.zero(&[i], at, &c.mul(&pe, &pa));
            acc.zero(&[i], at, &c.mul(&pa, &pe));
        }
    }
    acc.finish()
}

/// `f(x, y) phi(e_xy) = phi(e_x) phi(f) phi(e_y) + phi(e_y) phi(f) phi(e_x)` for `x < y`.
fn sandwich_strict(c: &Ctx) -> Check {
    let mut acc = Acc::new("sandwich_strict");
    for (i, f) in c.corpus.iter().enumerate() {
        for &(x, y) in c.strict_pairs() {
            let lhs = scale_vec(&f.get(x, y), &c.phi(&c.unit(x, y)));
            let rhs = add_vec(&c.eng.sandwich(x, &c.phi_of[i], y), &c.eng.sandwich(y, &c.phi_of[i], x));
            acc.eq(&[i, x, y], || vec![format!("f{i}"), c.label(x), c.label(y)], &lhs, &rhs);
        }
    }
    acc.finish()
}

/// `f(x, x) phi(e_x) = phi(e_x) phi(f) phi(e_x)`.
fn sandwich_diagonal(c: &Ctx) -> Check {
    let mut acc = Acc::new("sandwich_diagonal");
    for (i, f) in c.corpus.iter().enumerate() {
        for x in 0..c.n {
            let lhs = scale_vec(&f.get(x, x), c.p(x));
            acc.eq(
                &[i, x],
                || vec![format!("f{i}"), c.label(x)],
                &lhs,
                &c.eng.sandwich(x, &c.phi_of[i], x),
            );
        }
    }
    acc.finish()
}

/// The sandwich test for equality in `A` agrees with plain equality.
fn equality_criterion(c: &Ctx) -> Check {
    let mut acc = Acc::new("equality_criterion");
    let ring = c.fi.ring();
    let d = c.fi.dim();
    let mut rng = c.rng(9);
    let mut elems: Vec<Vector> = c.phi_of.clone();
    elems.extend(c.psi_of.iter().cloned());
    for _ in 0..c.opts.samples {
        elems.push((0..d).map(|_| crate::random::small_scalar(ring, &mut rng, 2)).collect());
    }
    let mut pairs = Vec::new();
    for (i, a) in elems.iter().enumerate() {
        pairs.push((i, a.clone(), a.clone()));
        let k = rng.gen_range(0..d);
        let mut b = a.clone();
        b[k] = &b[k] + &ring.one();
        pairs.push((i, a.clone(), b));
        let j = rng.gen_range(0..elems.len());
        pairs.push((i, a.clone(), elems[j].clone()));
    }
    for (i, a, b) in pairs {
        acc.instances += 1;
        if c.eng.sandwich_equal(&a, &b) != (a == b) {
            acc.witnesses.push(Witness::new(vec![i], vec![format!("a{i}")], &a, &b));
        }
    }
    acc.finish()
}

/// `phi` restricted to the diagonal subalgebra is multiplicative both ways.
fn diagonal_homomorphism(c: &Ctx) -> Check {
    let mut acc = Acc::new("diagonal_homomorphism");
    let mut diag: Vec<(String, Vector)> = (0..c.n).map(|x| (format!("e({})", c.label(x)), c.unit(x, x))).collect();
    for (i, f) in c.corpus.iter().enumerate() {
        diag.push((format!("f{i}_D"), c.coords(&f.split_diag().0)));
    }
    let images: Vec<Vector> = diag.iter().map(|(_, a)| c.phi(a)).collect();
    for i in 0..diag.len() {
        for j in 0..diag.len() {
            let lhs = c.phi(&c.dmul(&diag[i].1, &diag[j].1));
            let at = || vec![diag[i].0.clone(), diag[j].0.clone()];
            acc.eq(&[i, j], at, &lhs, &c.mul(&images[i], &images[j]));
            acc.eq(&[i, j], at, &lhs, &c.mul(&images[j], &images[i]));
        }
    }
    acc.finish()
}

/// `phi(e_x) phi(f) phi(e_y) = f(x, y) psi(e_xy)` for `x <= y`.
fn psi_sandwich(c: &Ctx) -> Check {
    let mut acc = Acc::new("psi_sandwich");
    let basis = c.fi.basis();
    for (i, f) in c.corpus.iter().enumerate() {
        for &(x, y) in c.leq_pairs() {
            let psi_e = c.eng.psi_tilde().column(basis.index_of(x, y).expect("x <= y"));
            let rhs = scale_vec(&f.get(x, y), &psi_e);
            acc.eq(
                &[i, x, y],
                || vec![format!("f{i}"), c.label(x), c.label(y)],
                &c.eng.sandwich(x, &c.phi_of[i], y),
                &rhs,
            );
        }
    }
    acc.finish()
}

/// For strict `f`, and `(a, b) = (x, y)` on the psi side, `(y, x)` on the theta side:
/// `phi(e_a) m(f) phi(e_b) = phi(e_a) phi(f) phi(e_b)`, the opposite sandwich
/// vanishes, and so does `phi(e_x) m(f) phi(e_x)`.
fn side_sandwich(c: &Ctx, side: Side) -> Check {
    let (name, images) = match side {
        Side::Psi => ("psi_tilde_sandwich", &c.psi_z),
        Side::Theta => ("theta_tilde_sandwich", &c.theta_z),
    };
    let mut acc = Acc::new(name);
    for (i, m) in images.iter().enumerate() {
        for &(x, y) in c.strict_pairs() {
            let (a, b) = if side == Side::Psi { (x, y) } else { (y, x) };
            let at = || vec![format!("f{i}_Z"), c.label(a), c.label(b)];
            acc.eq(
                &[i, a, b],
                at,
                &c.eng.sandwich(a, m, b),
                &c.eng.sandwich(a, &c.phi_z[i], b),
            );
            acc.zero(&[i, b, a], at, &c.eng.sandwich(b, m, a));
        }
        for x in 0..c.n {
            acc.zero(
                &[i, x, x],
                || vec![format!("f{i}_Z"), c.label(x)],
                &c.eng.sandwich(x, m, x),
            );
        }
    }
    acc.finish()
}

fn psi_tilde_sandwich(c: &Ctx) -> Check {
    side_sandwich(c, Side::Psi)
}

fn theta_tilde_sandwich(c: &Ctx) -> Check {
    side_sandwich(c, Side::Theta)
}

/// The construction through `phi^-1` reproduces the formula values on the matrix units.
fn extension_agrees(c: &Ctx) -> Check {
    let mut acc = Acc::new("extension_agrees");
    let basis = c.fi.basis();
    for (i, &(x, y)) in basis.pairs().iter().enumerate() {
        let e = FinSeries::unit_series(c.fi.poset().clone(), c.fi.ring(), x, y).expect("x <= y");
        for side in [Side::Psi, Side::Theta] {
            let formula = if x == y {
                c.p(x).to_vec()
            } else {
                let pe = c.eng.phi().column(i);
                match side {
                    Side::Psi => c.mul3(c.p(x), &pe, c.p(y)),
                    Side::Theta => c.mul3(c.p(y), &pe, c.p(x)),
                }
            };
            let oracle = c.eng.extend_via_inverse(&e, side).expect("unit series lives in fi");
            acc.eq(
                &[i],
                || vec![format!("{side:?}"), basis_label(c, i)],
                oracle.coords(),
                &formula,
            );
        }
    }
    acc.finish()
}

fn basis_label(c: &Ctx, i: usize) -> String {
    c.fi.algebra().labels()[i].clone()
}

/// The pointwise construction agrees with the linear extension on the corpus.
fn oracle_equivalence(c: &Ctx) -> Check {
    let mut acc = Acc::new("oracle_equivalence");
    for (i, f) in c.corpus.iter().enumerate() {
        for (side, images) in [(Side::Psi, &c.psi_of), (Side::Theta, &c.theta_of)] {
            let oracle = c.eng.extend_via_inverse(f, side).expect("corpus lives in fi");
            acc.eq(
                &[i],
                || vec![format!("{side:?}"), format!("f{i}")],
                oracle.coords(),
                &images[i],
            );
        }
    }
    acc.finish()
}

/// `a_xx = phi(e_x) phi(f) phi(e_x) = 0` for strict `f`, so `g` and `h` are strict.
fn g_strict(c: &Ctx) -> Check {
    let mut acc = Acc::new("g_strict");
    for (i, pf) in c.phi_z.iter().enumerate() {
        for x in 0..c.n {
            acc.zero(
                &[i, x],
                || vec![format!("f{i}_Z"), c.label(x)],
                &c.eng.sandwich(x, pf, x),
            );
        }
        for side in [Side::Psi, Side::Theta] {
            let g = c.eng.extension_series(&c.strict[i], side).expect("corpus lives in fi");
            acc.instances += 1;
            if !g.is_strict() {
                let coords = c.coords(&g);
                acc.witnesses.push(Witness::new(
                    vec![i],
                    vec![format!("{side:?}"), format!("f{i}_Z")],
                    &coords,
                    &coords,
                ));
            }
        }
    }
    acc.finish()
}

/// For strict `f` and `x < y`, with `a = phi(e_x) phi(f) phi(e_y)`:
/// `phi(e_x) a phi(e_y) = a`, `phi(e_y) a phi(e_x) = 0`, `phi^-1(a)` is a
/// multiple of `e_xy`, and `phi(e_x) psi(f) phi(e_y) + phi(e_y) psi(f) phi(e_x) = a`.
fn inverse_sandwich(c: &Ctx) -> Check {
    let mut acc = Acc::new("inverse_sandwich");
    let basis = c.fi.basis();
    for (i, pf) in c.phi_z.iter().enumerate() {
        for &(x, y) in c.strict_pairs() {
            let at = || vec![format!("f{i}_Z"), c.label(x), c.label(y)];
            let a = c.eng.sandwich(x, pf, y);
            acc.eq(&[i, x, y], at, &c.eng.sandwich(x, &a, y), &a);
            acc.zero(&[i, x, y], at, &c.eng.sandwich(y, &a, x));
            let pre = c.eng.phi_inv().apply_vec(&a);
            let k = basis.index_of(x, y).expect("x < y");
            let mut only = vec![c.fi.ring().zero(); pre.len()];
            only[k] = pre[k].clone();
            acc.eq(&[i, x, y], at, &pre, &only);
            let sum = add_vec(&c.eng.sandwich(x, &c.psi_z[i], y), &c.eng.sandwich(y, &c.psi_z[i], x));
            acc.eq(&[i, x, y], at, &sum, &a);
        }
    }
    acc.finish()
}

/// For strict `f, g` with `m(f) = phi(f')`, `m(g) = phi(g')` and `x <= y`:
/// `phi(e_x) m(f) phi(e_W) m(g) phi(e_y) = phi(e_y) m(f) phi(e_W) m(g) phi(e_x) = 0`
/// whenever `W` avoids the points `z` of `[x, y]` where the relevant entries of
/// `f'` and `g'` are both nonzero: `f'(x, z) g'(z, y)` for psi, `g'(x, z) f'(z, y)` for theta.
fn side_annihilation(c: &Ctx, side: Side) -> Check {
    let (name, images) = match side {
        Side::Psi => ("psi_annihilation", &c.psi_z),
        Side::Theta => ("theta_annihilation", &c.theta_z),
    };
    let mut acc = Acc::new(name);
    let pre: Vec<FinSeries> = images
        .iter()
        .map(|m| {
            c.fi.series_from_coords(&c.eng.phi_inv().apply_vec(m))
                .expect("dimension matches")
        })
        .collect();
    let mut rng = c.rng(if side == Side::Psi { 18 } else { 19 });
    let all: Vec<usize> = (0..c.n).collect();
    for (i, fi_) in pre.iter().enumerate() {
        for (j, gj) in pre.iter().enumerate() {
            for &(x, y) in c.leq_pairs() {
                let interval = c.fi.poset().interval_indices(x, y);
                let excluded: BTreeSet<usize> = interval
                    .iter()
                    .copied()
                    .filter(|&z| match side {
                        Side::Psi => !fi_.get(x, z).is_zero() && !gj.get(z, y).is_zero(),
                        Side::Theta => !gj.get(x, z).is_zero() && !fi_.get(z, y).is_zero(),
                    })
                    .collect();
                let allowed: Vec<usize> = all.iter().copied().filter(|z| !excluded.contains(z)).collect();
                let mut ws: Vec<Vec<usize>> = vec![
                    vec![],
                    all.clone(),
                    all.iter().copied().filter(|z| !interval.contains(z)).collect(),
                    allowed.clone(),
                ];
                for _ in 0..c.opts.w_samples {
                    ws.push(c.random_subset(&mut rng, &allowed));
                }
                ws.sort();
                ws.dedup();
                let left_x = c.mul(c.p(x), &images[i]);
                let left_y = c.mul(c.p(y), &images[i]);
                let right_y = c.mul(&images[j], c.p(y));
                let right_x = c.mul(&images[j], c.p(x));
                for w in ws.iter().filter(|w| w.iter().all(|z| !excluded.contains(z))) {
                    let pw = c.p_set(w);
                    let at = || {
                        vec![
                            format!("f{i}_Z"),
                            format!("f{j}_Z"),
                            c.label(x),
                            c.label(y),
                            c.set_label(w),
                        ]
                    };
                    acc.zero(&[i, j, x, y], at, &c.mul3(&left_x, &pw, &right_y));
                    acc.zero(&[i, j, x, y], at, &c.mul3(&left_y, &pw, &right_x));
                }
            }
        }
    }
    acc.finish()
}

fn psi_annihilation(c: &Ctx) -> Check {
    side_annihilation(c, Side::Psi)
}

fn theta_annihilation(c: &Ctx) -> Check {
    side_annihilation(c, Side::Theta)
}

/// `phi(e_x) m(f) phi(e_W) = phi(e_x) m(f_1) phi(e_W)` and
/// `phi(e_W) m(f) phi(e_x) = phi(e_W) m(f_2) phi(e_x)`, where
/// `(f_1, f_2) = (f_{>x}, f_{<x})` for psi and `(f_{<x}, f_{>x})` for theta.
fn side_truncation(c: &Ctx, side: Side) -> Check {
    let name = if side == Side::Psi {
        "psi_truncation"
    } else {
        "theta_truncation"
    };
    let m = c.eng.side_map(side);
    let (left, right) = match side {
        Side::Psi => (Truncation::Above, Truncation::Below),
        Side::Theta => (Truncation::Below, Truncation::Above),
    };
    let mut acc = Acc::new(name);
    let mut rng = c.rng(if side == Side::Psi { 20 } else { 21 });
    let all: Vec<usize> = (0..c.n).collect();
    for (i, f) in c.strict.iter().enumerate() {
        let mf = m.apply_vec(&c.coords(f));
        for x in 0..c.n {
            let m_left = m.apply_vec(&c.coords(&f.truncate(x, left)));
            let m_right = m.apply_vec(&c.coords(&f.truncate(x, right)));
            let mut ws = vec![vec![], all.clone(), all.iter().copied().filter(|&z| z != x).collect()];
            for _ in 0..c.opts.w_samples {
                ws.push(c.random_subset(&mut rng, &all));
            }
            for w in &ws {
                let pw = c.p_set(w);
                let at = || vec![format!("f{i}_Z"), c.label(x), c.set_label(w)];
                acc.eq(&[i, x], at, &c.mul3(c.p(x), &mf, &pw), &c.mul3(c.p(x), &m_left, &pw));
                acc.eq(&[i, x], at, &c.mul3(&pw, &mf, c.p(x)), &c.mul3(&pw, &m_right, c.p(x)));
            }
        }
    }
    acc.finish()
}

fn psi_truncation(c: &Ctx) -> Check {
    side_truncation(c, Side::Psi)
}

fn theta_truncation(c: &Ctx) -> Check {
    side_truncation(c, Side::Theta)
}

/// Products of corpus series, split into the four diagonal/strict combinations.
fn product_check(c: &Ctx, side: Side) -> Check {
    let name = if side == Side::Psi {
        "psi_multiplicative"
    } else {
        "theta_antimultiplicative"
    };
    let m = c.eng.side_map(side);
    let mut acc = Acc::new(name);
    let mut parts: Vec<(String, Vector)> = Vec::new();
    for (i, f) in c.corpus.iter().enumerate() {
        let (d, z) = f.split_diag();
        parts.push((format!("f{i}"), c.coords(f)));
        parts.push((format!("f{i}_D"), c.coords(&d)));
        parts.push((format!("f{i}_Z"), c.coords(&z)));
    }
    let images: Vec<Vector> = parts.iter().map(|(_, a)| m.apply_vec(a)).collect();
    for i in 0..parts.len() {
        for j in 0..parts.len() {
            let lhs = m.apply_vec(&c.dmul(&parts[i].1, &parts[j].1));
            let rhs = match side {
                Side::Psi => c.mul(&images[i], &images[j]),
                Side::Theta => c.mul(&images[j], &images[i]),
            };
            acc.eq(&[i, j], || vec![parts[i].0.clone(), parts[j].0.clone()], &lhs, &rhs);
        }
    }
    acc.finish()
}

fn psi_multiplicative(c: &Ctx) -> Check {
    product_check(c, Side::Psi)
}

fn theta_antimultiplicative(c: &Ctx) -> Check {
    product_check(c, Side::Theta)
}

/// `psi(f) theta(f') = theta(f') psi(f) = 0` for strict corpus series.
fn mutual_annihilation(c: &Ctx) -> Check {
    let mut acc = Acc::new("mutual_annihilation");
    for (i, p) in c.psi_z.iter().enumerate() {
        for (j, t) in c.theta_z.iter().enumerate() {
            let at = || vec![format!("f{i}_Z"), format!("f{j}_Z")];
            acc.zero(&[i, j], at, &c.mul(p, t));
            acc.zero(&[i, j], at, &c.mul(t, p));
        }
    }
    acc.finish()
}

/// `phi = psi = theta` on diagonal series, `phi = psi + theta` on strict ones,
/// and `g + h = f` pointwise for strict `f`.
fn near_sum(c: &Ctx) -> Check {
    let mut acc = Acc::new("near_sum");
    for (i, f) in c.corpus.iter().enumerate() {
        let d = c.coords(&f.split_diag().0);
        let at = || vec![format!("f{i}")];
        let pd = c.phi(&d);
        acc.eq(&[i], at, &c.eng.psi_tilde().apply_vec(&d), &pd);
        acc.eq(&[i], at, &c.eng.theta_tilde().apply_vec(&d), &pd);
        acc.eq(&[i], at, &add_vec(&c.psi_z[i], &c.theta_z[i]), &c.phi_z[i]);
        let g = c
            .eng
            .extension_series(&c.strict[i], Side::Psi)
            .expect("corpus lives in fi");
        let h = c
            .eng
            .extension_series(&c.strict[i], Side::Theta)
            .expect("corpus lives in fi");
        let gh = sub_vec(&add_vec(&c.coords(&g), &c.coords(&h)), &c.coords(&c.strict[i]));
        acc.zero(&[i], at, &gh);
    }
    acc.finish()
}
