//! Finite partially ordered sets.
//!
//! Elements carry a fixed global index, their position in the element list.
//! Every basis and file format downstream uses this index order.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    elements: Vec<String>,
    index: HashMap<String, usize>,
    leq: Vec<bool>,
}

impl fmt::Debug for Poset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Poset")
            .field("elements", &self.elements)
            .field("covers", &self.cover_relations())
            .finish()
    }
}

/// Builds the poset generated by `relation_pairs`: the reflexive-transitive
/// closure is taken here, and a cycle through distinct elements is an error
/// rather than something to repair.
pub fn validate_poset<S, T>(elements: &[S], relation_pairs: &[(T, T)]) -> Result<Poset>
where
    S: AsRef<str>,
    T: AsRef<str>,
{
    let elements: Vec<String> = elements.iter().map(|e| e.as_ref().to_owned()).collect();
    let mut index = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        if index.insert(e.clone(), i).is_some() {
            return Err(Error::DuplicateElement(e.clone()));
        }
    }
    let n = elements.len();
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + i] = true;
    }
    for (a, b) in relation_pairs {
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_owned()));
        let (a, b) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
        leq[a * n + b] = true;
    }
    transitive_closure(&mut leq, n);
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i * n + j] && leq[j * n + i] {
                return Err(Error::AntisymmetryViolation(elements[i].clone(), elements[j].clone()));
            }
        }
    }
    Ok(Poset { elements, index, leq })
}

fn transitive_closure(leq: &mut [bool], n: usize) {
    for k in 0..n {
        for i in 0..n {
            if !leq[i * n + k] {
                continue;
            }
            for j in 0..n {
                if leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
}

impl Poset {
    pub fn chain(n: usize) -> Poset {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        let pairs: Vec<(&str, &str)> = labels.windows(2).map(|w| (w[0].as_str(), w[1].as_str())).collect();
        validate_poset(&labels, &pairs).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Poset {
        let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
        validate_poset::<_, &str>(&labels, &[]).expect("an antichain is a poset")
    }

    /// `0 < a, b < 1` with `a`, `b` incomparable.
    pub fn diamond() -> Poset {
        validate_poset(&["0", "a", "b", "1"], &[("0", "a"), ("0", "b"), ("a", "1"), ("b", "1")])
            .expect("the diamond is a poset")
    }

    /// Disjoint union; labels of the two sides must not collide.
    pub fn disjoint_union(&self, other: &Poset) -> Result<Poset> {
        let elements: Vec<&str> = self
            .elements
            .iter()
            .chain(&other.elements)
            .map(String::as_str)
            .collect();
        let relations: Vec<(&str, &str)> = self
            .strict_relations()
            .into_iter()
            .chain(other.strict_relations())
            .collect();
        validate_poset(&elements, &relations)
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[String] {
        &self.elements
    }

    pub fn label(&self, i: usize) -> &str {
        &self.elements[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownElement(label.to_owned()))
    }

    #[inline]
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }

    #[inline]
    pub fn lt(&self, x: usize, y: usize) -> bool {
        x != y && self.leq(x, y)
    }

    pub fn leq_labels(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.leq(self.index_of(x)?, self.index_of(y)?))
    }

    /// `{z : x <= z <= y}` in global order; empty when `x` is not below `y`.
    pub fn interval(&self, x: &str, y: &str) -> Result<Vec<String>> {
        let (x, y) = (self.index_of(x)?, self.index_of(y)?);
        Ok(self
            .interval_indices(x, y)
            .into_iter()
            .map(|z| self.elements[z].clone())
            .collect())
    }

    pub fn interval_indices(&self, x: usize, y: usize) -> Vec<usize> {
        if !self.leq(x, y) {
            return Vec::new();
        }
        (0..self.len()).filter(|&z| self.leq(x, z) && self.leq(z, y)).collect()
    }

    /// Pairs `x < y`, lexicographic by global index.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|&(x, y)| self.lt(x, y))
            .collect()
    }

    fn strict_relations(&self) -> Vec<(&str, &str)> {
        self.strict_pairs()
            .into_iter()
            .map(|(x, y)| (self.label(x), self.label(y)))
            .collect()
    }

    /// Covering pairs `x < y` with nothing strictly in between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        self.strict_pairs()
            .into_iter()
            .filter(|&(x, y)| !(0..self.len()).any(|z| self.lt(x, z) && self.lt(z, y)))
            .collect()
    }

    pub fn cover_relations(&self) -> Vec<(String, String)> {
        self.covers()
            .into_iter()
            .map(|(x, y)| (self.elements[x].clone(), self.elements[y].clone()))
            .collect()
    }

    /// A linear extension: every `x < y` has `x` before `y`. Ties keep global order.
    pub fn linear_extension(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.len()).collect();
        order.sort_by_key(|&x| ((0..self.len()).filter(|&z| self.lt(z, x)).count(), x));
        order
    }

    /// Connected components of the comparability graph, each sorted, ordered by smallest member.
    #[allow(clippy::needless_range_loop)]
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.len();
        let mut comp = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(x) = stack.pop() {
                for y in 0..n {
                    if comp[y] == usize::MAX && (self.leq(x, y) || self.leq(y, x)) {
                        comp[y] = id;
                        members.push(y);
                        stack.push(y);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// The subposet on `members` (given in the order they should be indexed).
    pub fn induced(&self, members: &[usize]) -> Poset {
        let elements: Vec<String> = members.iter().map(|&i| self.elements[i].clone()).collect();
        let index = elements.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect();
        let m = members.len();
        let mut leq = vec![false; m * m];
        for (a, &x) in members.iter().enumerate() {
            for (b, &y) in members.iter().enumerate() {
                leq[a * m + b] = self.leq(x, y);
            }
        }
        Poset { elements, index, leq }
    }
}

/// A bijection between two posets that preserves (or, when `reversing`, reverses) the order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrderMap {
    source: Arc<Poset>,
    target: Arc<Poset>,
    images: Vec<usize>,
    reversing: bool,
}

impl OrderMap {
    pub fn new(source: Arc<Poset>, target: Arc<Poset>, images: Vec<usize>, reversing: bool) -> Result<Self> {
        if source.len() != target.len() {
            return Err(Error::SizeMismatch(source.len(), target.len()));
        }
        if images.len() != source.len() {
            return Err(Error::SizeMismatch(images.len(), source.len()));
        }
        let mut seen = vec![false; target.len()];
        for &i in &images {
            if i >= target.len() || std::mem::replace(&mut seen[i], true) {
                return Err(Error::Invalid("order map images are not a bijection".into()));
            }
        }
        let map = OrderMap {
            source,
            target,
            images,
            reversing,
        };
        if let Some((x, y)) = map.monotonicity_failure() {
            return Err(Error::Invalid(format!(
                "order map does not {} the order at ({}, {})",
                if map.reversing { "reverse" } else { "preserve" },
                map.source.label(x),
                map.source.label(y)
            )));
        }
        Ok(map)
    }

    pub fn identity(poset: Arc<Poset>) -> Self {
        let images = (0..poset.len()).collect();
        OrderMap {
            source: poset.clone(),
            target: poset,
            images,
            reversing: false,
        }
    }

    pub fn source(&self) -> &Arc<Poset> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Poset> {
        &self.target
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn image(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_reversing(&self) -> bool {
        self.reversing
    }

    /// First pair where the (anti)monotonicity equivalence fails, by exhaustive check.
    pub fn monotonicity_failure(&self) -> Option<(usize, usize)> {
        let n = self.source.len();
        for x in 0..n {
            for y in 0..n {
                let (u, v) = (self.images[x], self.images[y]);
                let mapped = if self.reversing {
                    self.target.leq(v, u)
                } else {
                    self.target.leq(u, v)
                };
                if self.source.leq(x, y) != mapped {
                    return Some((x, y));
                }
            }
        }
        None
    }
}

/// All order isomorphisms (or anti-isomorphisms) `p -> q`, lexicographic by image vector.
/// Backtracking; meant for small posets.
pub fn order_isomorphisms(p: &Arc<Poset>, q: &Arc<Poset>, reversing: bool) -> Result<Vec<OrderMap>> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch(p.len(), q.len()));
    }
    let n = p.len();
    let mut out = Vec::new();
    let mut images = Vec::with_capacity(n);
    let mut used = vec![false; n];
    extend_assignment(p, q, reversing, &mut images, &mut used, &mut |images| {
        out.push(OrderMap {
            source: p.clone(),
            target: q.clone(),
            images: images.to_vec(),
            reversing,
        });
    });
    Ok(out)
}

fn extend_assignment(
    p: &Poset,
    q: &Poset,
    reversing: bool,
    images: &mut Vec<usize>,
    used: &mut [bool],
    emit: &mut dyn FnMut(&[usize]),
) {
    let x = images.len();
    if x == p.len() {
        emit(images);
        return;
    }
    let mapped = |a: usize, b: usize| if reversing { q.leq(b, a) } else { q.leq(a, b) };
    for u in 0..q.len() {
        if used[u] {
            continue;
        }
        let consistent = (0..x).all(|y| {
            let v = images[y];
            p.leq(x, y) == mapped(u, v) && p.leq(y, x) == mapped(v, u)
        });
        if !consistent {
            continue;
        }
        used[u] = true;
        images.push(u);
        extend_assignment(p, q, reversing, images, used, emit);
        images.pop();
        used[u] = false;
    }
}

/// Probability of a relation between two elements of the random DAG, as an exact ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeProbability {
    num: u32,
    den: u32,
}

impl EdgeProbability {
    pub fn new(num: u32, den: u32) -> Result<Self> {
        if den == 0 || num > den {
            return Err(Error::Invalid(format!("edge probability {num}/{den} is not in [0, 1]")));
        }
        Ok(EdgeProbability { num, den })
    }

    pub const ZERO: EdgeProbability = EdgeProbability { num: 0, den: 1 };
    pub const ONE: EdgeProbability = EdgeProbability { num: 1, den: 1 };

    /// Accepts `p/q` or a terminating decimal such as `0.35`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("`{text}` is not a probability"));
        if let Some((p, q)) = text.split_once('/') {
            return Self::new(
                p.trim().parse().map_err(|_| bad())?,
                q.trim().parse().map_err(|_| bad())?,
            );
        }
        let (int, frac) = text.split_once('.').unwrap_or((text, ""));
        if frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let den = 10u64.pow(frac.len() as u32);
        let int: u64 = if int.is_empty() {
            0
        } else {
            int.parse().map_err(|_| bad())?
        };
        let frac: u64 = if frac.is_empty() {
            0
        } else {
            frac.parse().map_err(|_| bad())?
        };
        let num = int.checked_mul(den).and_then(|v| v.checked_add(frac)).ok_or_else(bad)?;
        let g = num_integer::gcd(num, den);
        Self::new(
            u32::try_from(num / g).map_err(|_| bad())?,
            u32::try_from(den / g).map_err(|_| bad())?,
        )
    }
}

impl fmt::Display for EdgeProbability {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Random poset on labels `1..=n`: each pair `i < j` of the fixed topological
/// order gets an edge with probability `p`, then the closure is taken.
///
/// The stream comes from `ChaCha8Rng::seed_from_u64(seed)`, so results are
/// reproducible within this implementation only.
pub fn generate_random_poset(n: usize, p: EdgeProbability, seed: u64) -> Result<Poset> {
    if n == 0 {
        return Err(Error::Invalid("a random poset needs at least one element".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.gen_ratio(p.num, p.den) {
                pairs.push((labels[i].as_str(), labels[j].as_str()));
            }
        }
    }
    validate_poset(&labels, &pairs)
}
