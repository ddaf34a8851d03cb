//! Explicit automorphisms of Galois fields, decomposition and inertia groups,
//! and towers `Q ⊆ K ⊆ L`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::arith::fp::roots_mod_p;
use crate::arith::hensel::hensel_root_lift;
use crate::arith::int::{balanced_mod, is_prime_u64, mod_inverse};
use crate::error::{Error, Result};
use crate::field::{Embedding, Field};
use crate::ideal::{decompose_prime, primes_above, Ideal, PrimeIdeal};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Automorphism {
    field: Field,
    image: Vec<BigInt>,
    embedding: Embedding,
}

impl Automorphism {
    /// Checks that `image` is a root of the defining polynomial.
    pub fn new(field: &Field, image: Vec<BigInt>) -> Result<Self> {
        let embedding = Embedding::new(field, field, image.clone())?;
        Ok(Automorphism {
            field: field.clone(),
            image,
            embedding,
        })
    }

    pub fn identity(field: &Field) -> Self {
        Self::new(field, field.theta()).unwrap()
    }

    /// Coordinates of `sigma(theta)`.
    pub fn image(&self) -> &[BigInt] {
        &self.image
    }

    pub fn apply(&self, a: &[BigInt]) -> Vec<BigInt> {
        self.embedding.apply(a)
    }

    pub fn apply_to_ideal(&self, a: &Ideal) -> Result<Ideal> {
        a.extend(&self.embedding)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism::new(&self.field, self.apply(&other.image)).unwrap()
    }
}

/// Subgroups are sorted lists of element indices.
pub type SubgroupIdx = Vec<usize>;

#[derive(Clone, Debug)]
pub struct GaloisGroup {
    field: Field,
    elements: Vec<Automorphism>,
    /// `table[a][b]` is the index of `elements[a] ∘ elements[b]`.
    table: Vec<Vec<usize>>,
    solvable: bool,
}

/// Smallest completely split prime at least `from` not dividing the discriminant.
fn split_prime(field: &Field, from: u64) -> Option<(u64, Vec<u64>)> {
    let n = field.degree();
    (from..from + 2_000_000)
        .filter(|&q| is_prime_u64(q))
        .find_map(|q| {
            if (field.disc() % BigInt::from(q)).is_zero() {
                return None;
            }
            let roots = roots_mod_p(field.poly(), q).ok()?;
            (roots.len() == n).then_some((q, roots))
        })
}

/// Roots of the defining polynomial in `Z/q^k`, with the inverse of their
/// Vandermonde matrix, for recognizing elements of `Z[theta]` from their
/// images under all embeddings.
struct Conjugates {
    m: BigInt,
    bound: BigInt,
    roots: Vec<BigInt>,
    vinv: Vec<Vec<BigInt>>,
}

impl Conjugates {
    fn new(field: &Field, q: u64, roots: &[u64], k: u32) -> Result<Self> {
        let qb = BigInt::from(q);
        let m = qb.pow(k);
        let roots: Vec<BigInt> = roots
            .iter()
            .map(|&r| hensel_root_lift(field.poly(), &qb, &BigInt::from(r), k))
            .collect::<Result<_>>()?;
        let n = roots.len();
        let v: Vec<Vec<BigInt>> = roots
            .iter()
            .map(|r| (0..n as u32).map(|i| r.modpow(&BigInt::from(i), &m)).collect())
            .collect();
        let vinv = inverse_mod(&v, &m).ok_or(Error::SingularRoot { p: qb })?;
        let bound = m.sqrt() >> 16;
        Ok(Conjugates {
            m,
            bound,
            roots,
            vinv,
        })
    }

    /// Small balanced coordinates of the element with conjugates `y`.
    fn recognize(&self, y: &[&BigInt]) -> Option<Vec<BigInt>> {
        let mut out = Vec::with_capacity(y.len());
        for row in &self.vinv {
            let s: BigInt = row.iter().zip(y).map(|(a, b)| a * *b).sum();
            let c = balanced_mod(&s, &self.m);
            if c.abs() > self.bound {
                return None;
            }
            out.push(c);
        }
        Some(out)
    }
}

/// Inverse of a square matrix modulo a prime power.
fn inverse_mod(a: &[Vec<BigInt>], m: &BigInt) -> Option<Vec<Vec<BigInt>>> {
    let n = a.len();
    let mut w: Vec<Vec<BigInt>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let (p, inv) = (c..n).find_map(|r| mod_inverse(&w[r][c], m).map(|i| (r, i)))?;
        w.swap(c, p);
        for x in w[c].iter_mut() {
            *x = (&*x * &inv).mod_floor(m);
        }
        for r in 0..n {
            if r != c && !w[r][c].is_zero() {
                let f = w[r][c].clone();
                let pivot = w[c].clone();
                for (x, y) in w[r].iter_mut().zip(&pivot) {
                    *x = (&*x - &f * y).mod_floor(m);
                }
            }
        }
    }
    Some(w.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Visit permutations of `items` in lexicographic order until `visit` says stop.
fn for_each_permutation(items: &mut Vec<usize>, k: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
    if k == items.len() {
        return visit(items);
    }
    for i in k..items.len() {
        items.swap(k, i);
        if for_each_permutation(items, k + 1, visit) {
            items.swap(k, i);
            return true;
        }
        items.swap(k, i);
    }
    false
}

fn precision(q: u64) -> u32 {
    (192 / q.ilog2()).max(2)
}

impl GaloisGroup {
    /// All automorphisms of a Galois field.
    ///
    /// Roots of the defining polynomial modulo a completely split prime `q`
    /// are lifted to `q^k`; each candidate image of `theta` is recognized as
    /// a short lattice vector and verified exactly. Precision is doubled up
    /// to three times before giving up with [`Error::NotGalois`].
    pub fn compute(field: &Field) -> Result<Self> {
        let n = field.degree();
        if n == 1 {
            return Ok(Self::from_elements(field, vec![Automorphism::identity(field)]));
        }
        let (q, roots) = match split_prime(field, 1_000) {
            Some(x) => x,
            None => return Err(Error::NotGalois { found: 1, degree: n }),
        };
        let mut k = precision(q);
        let mut best = 0;
        for _ in 0..4 {
            let conj = Conjugates::new(field, q, &roots, k)?;
            let mut found = vec![Automorphism::identity(field)];
            // sigma(theta) sends embedding i to root perm[i]
            for j in 1..n {
                let mut rest: Vec<usize> = (0..n).filter(|&x| x != j).collect();
                for_each_permutation(&mut rest, 0, &mut |perm| {
                    let mut y: Vec<&BigInt> = vec![&conj.roots[j]];
                    y.extend(perm[..n - 1].iter().map(|&x| &conj.roots[x]));
                    let Some(c) = conj.recognize(&y) else {
                        return false;
                    };
                    match Automorphism::new(field, c) {
                        Ok(a) => {
                            if !found.contains(&a) {
                                found.push(a);
                            }
                            true
                        }
                        Err(_) => false,
                    }
                });
            }
            best = best.max(found.len());
            if found.len() == n {
                return Ok(Self::from_elements(field, found));
            }
            k *= 2;
        }
        Err(Error::NotGalois {
            found: best,
            degree: n,
        })
    }

    fn from_elements(field: &Field, elements: Vec<Automorphism>) -> Self {
        let n = elements.len();
        let table: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| {
                        let c = elements[a].compose(&elements[b]);
                        elements
                            .iter()
                            .position(|x| *x == c)
                            .expect("closed under composition")
                    })
                    .collect()
            })
            .collect();
        let mut g = GaloisGroup {
            field: field.clone(),
            elements,
            table,
            solvable: false,
        };
        g.solvable = g.derived_series().last().is_some_and(|h| h.len() == 1);
        g
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Automorphism] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Automorphism {
        &self.elements[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn is_solvable(&self) -> bool {
        self.solvable
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        (0..self.order()).find(|&b| self.table[a][b] == 0).unwrap()
    }

    pub fn all(&self) -> SubgroupIdx {
        (0..self.order()).collect()
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> SubgroupIdx {
        let mut set: BTreeSet<usize> = BTreeSet::from([0]);
        let mut frontier: Vec<usize> = vec![0];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.table[x][g];
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn commutator_subgroup(&self, h: &[usize]) -> SubgroupIdx {
        let mut gens = Vec::new();
        for &a in h {
            for &b in h {
                let ab = self.table[a][b];
                let ba = self.table[b][a];
                gens.push(self.table[ab][self.inverse(ba)]);
            }
        }
        self.closure(&gens)
    }

    /// `G, G', G'', ...` until it stabilizes.
    pub fn derived_series(&self) -> Vec<SubgroupIdx> {
        let mut series = vec![self.all()];
        loop {
            let next = self.commutator_subgroup(series.last().unwrap());
            if next.len() == series.last().unwrap().len() {
                return series;
            }
            series.push(next);
        }
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.table[x][a];
            k += 1;
        }
        k
    }

    pub fn is_cyclic(&self, h: &[usize]) -> bool {
        h.iter().any(|&a| self.element_order(a) == h.len())
    }

    pub fn is_abelian(&self, h: &[usize]) -> bool {
        h.iter()
            .all(|&a| h.iter().all(|&b| self.table[a][b] == self.table[b][a]))
    }

    /// Associativity on every triple and presence of inverses.
    pub fn check_group_axioms(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..n).any(|b| self.table[a][b] == 0 && self.table[b][a] == 0))
            && (0..n).all(|a| {
                (0..n).all(|b| {
                    (0..n).all(|c| self.table[self.table[a][b]][c] == self.table[a][self.table[b][c]])
                })
            })
    }

    /// `{sigma : sigma(P) = P}`.
    pub fn decomposition_group(&self, pr: &PrimeIdeal) -> Result<SubgroupIdx> {
        let mut out = Vec::new();
        for (i, s) in self.elements.iter().enumerate() {
            if s.apply_to_ideal(&pr.ideal)? == pr.ideal {
                out.push(i);
            }
        }
        Ok(out)
    }

    /// `{sigma in D_P : sigma(theta) = theta mod P}`.
    pub fn inertia_group(&self, pr: &PrimeIdeal) -> Result<SubgroupIdx> {
        let theta = self.field.theta();
        Ok(self
            .decomposition_group(pr)?
            .into_iter()
            .filter(|&i| {
                pr.ideal
                    .contains(&self.field.sub(self.elements[i].image(), &theta))
            })
            .collect())
    }

    /// Elements fixing every element of `sub` (given as coordinates).
    pub fn stabilizer(&self, fixed: &[BigInt]) -> SubgroupIdx {
        (0..self.order())
            .filter(|&i| self.elements[i].apply(fixed) == fixed)
            .collect()
    }

    /// Conjugate subgroup `g H g^-1`.
    pub fn conjugate(&self, g: usize, h: &[usize]) -> SubgroupIdx {
        let gi = self.inverse(g);
        let mut out: Vec<usize> = h.iter().map(|&x| self.table[self.table[g][x]][gi]).collect();
        out.sort();
        out
    }
}

/// Relative splitting of one prime of the base field.
#[derive(Clone, Debug, Serialize)]
pub struct RelativeSplitting {
    #[serde(with = "crate::arith::json::int")]
    pub p: BigInt,
    /// residue degree of the base prime over `p`
    pub base_f: u32,
    pub e: u32,
    pub f: u32,
    pub g: usize,
}

/// `K ⊆ L` with `L/Q` Galois; `Gal(L/K)` is the stabilizer of the image of
/// `K`'s generator.
#[derive(Clone, Debug)]
pub struct Tower {
    base: Field,
    top: Field,
    embedding: Embedding,
    group: GaloisGroup,
    relative: SubgroupIdx,
}

impl Tower {
    pub fn new(embedding: Embedding, group: GaloisGroup) -> Result<Self> {
        if *group.field() != *embedding.target() {
            return Err(Error::EmbeddingMismatch("group of a different top field".into()));
        }
        let relative = group.stabilizer(&embedding.image());
        if relative.len() != embedding.relative_degree() {
            return Err(Error::EmbeddingMismatch(format!(
                "stabilizer of order {} in an extension of degree {}",
                relative.len(),
                embedding.relative_degree()
            )));
        }
        Ok(Tower {
            base: embedding.source().clone(),
            top: embedding.target().clone(),
            embedding,
            group,
            relative,
        })
    }

    /// `L/L`.
    pub fn trivial(group: GaloisGroup) -> Self {
        let f = group.field().clone();
        Self::new(Embedding::identity(&f), group).unwrap()
    }

    /// `L/Q`.
    pub fn over_rationals(group: GaloisGroup) -> Self {
        let f = group.field().clone();
        Self::new(Embedding::from_rationals(&f), group).unwrap()
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn top(&self) -> &Field {
        &self.top
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    pub fn group(&self) -> &GaloisGroup {
        &self.group
    }

    /// Indices of `Gal(L/K)` inside `Gal(L/Q)`.
    pub fn relative_group(&self) -> &[usize] {
        &self.relative
    }

    pub fn degree(&self) -> usize {
        self.embedding.relative_degree()
    }

    pub fn is_relative_cyclic(&self) -> bool {
        self.group.is_cyclic(&self.relative)
    }

    pub fn is_relative_solvable(&self) -> bool {
        // subgroups of solvable groups are solvable; otherwise check directly
        if self.group.is_solvable() {
            return true;
        }
        let mut h = self.relative.clone();
        loop {
            let next = self.group.commutator_subgroup(&h);
            if next.len() == 1 {
                return true;
            }
            if next.len() == h.len() {
                return false;
            }
            h = next;
        }
    }

    /// Primes of `L` above a prime of `K`.
    pub fn primes_above(&self, small: &PrimeIdeal) -> Result<Vec<PrimeIdeal>> {
        primes_above(small, &self.embedding)
    }

    pub fn splitting(&self, small: &PrimeIdeal) -> Result<RelativeSplitting> {
        let above = self.primes_above(small)?;
        let big = &above[0];
        let (e, f) = (big.e / small.e, big.f / small.f);
        let total: usize = above
            .iter()
            .map(|b| ((b.e / small.e) * (b.f / small.f)) as usize)
            .sum();
        if total != self.degree() || above.iter().any(|b| b.e / small.e != e || b.f / small.f != f) {
            return Err(Error::EmbeddingMismatch(format!(
                "inconsistent splitting above {}",
                small.p
            )));
        }
        Ok(RelativeSplitting {
            p: small.p.clone(),
            base_f: small.f,
            e,
            f,
            g: above.len(),
        })
    }

    /// Primes of `K` ramified in `L`, with their splitting data.
    pub fn ramified(&self) -> Result<Vec<(PrimeIdeal, RelativeSplitting)>> {
        let mut out = Vec::new();
        for p in self.top.ramified_primes() {
            for small in decompose_prime(&self.base, &p)? {
                let s = self.splitting(&small)?;
                if s.e > 1 {
                    out.push((small, s));
                }
            }
        }
        Ok(out)
    }

    /// `D_P ∩ Gal(L/K)`.
    pub fn decomposition_group(&self, big: &PrimeIdeal) -> Result<SubgroupIdx> {
        let d = self.group.decomposition_group(big)?;
        Ok(d.into_iter().filter(|i| self.relative.contains(i)).collect())
    }

    pub fn inertia_group(&self, big: &PrimeIdeal) -> Result<SubgroupIdx> {
        let d = self.group.inertia_group(big)?;
        Ok(d.into_iter().filter(|i| self.relative.contains(i)).collect())
    }

    /// Number of infinite places of `K` ramified in `L`.
    pub fn ramified_infinite(&self) -> usize {
        let (r1k, _) = self.base.signature();
        let (r1l, _) = self.top.signature();
        // real places of K with a complex place above them
        r1k - r1l / self.degree()
    }
}

/// Check that `image` lands in the field and return the embedding
/// `K -> L` it defines; a wrapper used by table loaders.
pub fn embedding_from_image(base: &Field, top: &Field, image: &[i64]) -> Result<Embedding> {
    if base.is_rationals() {
        return Ok(Embedding::from_rationals(top));
    }
    Embedding::new(base, top, image.iter().map(|&x| BigInt::from(x)).collect())
}

/// All embeddings of `K` into the Galois field `L`.
pub fn find_embeddings(base: &Field, top: &Field) -> Result<Vec<Embedding>> {
    if base.is_rationals() {
        return Ok(vec![Embedding::from_rationals(top)]);
    }
    let n = top.degree();
    let (q, roots) = split_prime(top, 1_000).ok_or(Error::NotGalois { found: 0, degree: n })?;
    let qb = BigInt::from(q);
    let base_roots = roots_mod_p(base.poly(), q)?;
    let mut k = precision(q);
    for _ in 0..4 {
        let conj = Conjugates::new(top, q, &roots, k)?;
        let targets: Vec<BigInt> = base_roots
            .iter()
            .map(|&r| hensel_root_lift(base.poly(), &qb, &BigInt::from(r), k))
            .collect::<Result<_>>()?;
        let nb = targets.len();
        let mut found: Vec<Embedding> = Vec::new();
        // every assignment of a root of f_K to each embedding of L
        let total = nb.pow(n as u32);
        for code in 0..total {
            let mut x = code;
            let y: Vec<&BigInt> = (0..n)
                .map(|_| {
                    let t = &targets[x % nb];
                    x /= nb;
                    t
                })
                .collect();
            if let Some(c) = conj.recognize(&y) {
                if let Ok(e) = Embedding::new(base, top, c) {
                    if !found.contains(&e) {
                        found.push(e);
                    }
                }
            }
        }
        if found.len() == base.degree() {
            return Ok(found);
        }
        k *= 2;
    }
    Err(Error::EmbeddingMismatch(format!(
        "{} does not embed in {}",
        base.poly(),
        top.poly()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::IntPoly;
    use crate::field::{make_field, quadratic_poly};

    fn field(c: &[i64]) -> Field {
        make_field(&IntPoly::from_i64(c)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn quadratic_conjugation() {
        let k = field(&[5, 0, 1]);
        let g = GaloisGroup::compute(&k).unwrap();
        assert_eq!(g.order(), 2);
        assert_eq!(g.element(1).image(), &ints(&[0, -1])[..]);
        assert!(g.is_solvable() && g.check_group_axioms());
    }

    #[test]
    fn klein_four_group() {
        // Q(i, sqrt 5)
        let l = field(&[1, 0, 3, 0, 1]);
        let g = GaloisGroup::compute(&l).unwrap();
        assert_eq!(g.order(), 4);
        assert!(g.is_abelian(&g.all()) && !g.is_cyclic(&g.all()));
        assert!((1..4).all(|i| g.element_order(i) == 2));
    }

    #[test]
    fn cyclic_quartic_and_octic() {
        let z5 = GaloisGroup::compute(&field(&[1, 1, 1, 1, 1])).unwrap();
        assert!(z5.is_cyclic(&z5.all()));
        // Q(zeta_15): Z/2 x Z/4
        let z15 = GaloisGroup::compute(&field(&[1, -1, 0, 1, -1, 1, 0, -1, 1])).unwrap();
        assert_eq!(z15.order(), 8);
        assert!(z15.is_abelian(&z15.all()) && !z15.is_cyclic(&z15.all()));
        assert_eq!((0..8).map(|i| z15.element_order(i)).max(), Some(4));
    }

    #[test]
    fn non_galois_cubic() {
        let k = field(&[-2, 0, 0, 1]);
        assert!(matches!(GaloisGroup::compute(&k), Err(Error::NotGalois { .. })));
    }

    #[test]
    fn action_on_primes_of_q_sqrt_minus_5() {
        let k = field(&[5, 0, 1]);
        let g = GaloisGroup::compute(&k).unwrap();
        let s = g.element(1);
        let p2 = &decompose_prime(&k, &BigInt::from(2)).unwrap()[0];
        assert_eq!(s.apply_to_ideal(&p2.ideal).unwrap(), p2.ideal);
        let p29 = decompose_prime(&k, &BigInt::from(29)).unwrap();
        assert_eq!(s.apply_to_ideal(&p29[0].ideal).unwrap(), p29[1].ideal);
        assert_eq!(g.element(0).apply_to_ideal(&p29[0].ideal).unwrap(), p29[0].ideal);
        assert_eq!(g.decomposition_group(&p29[0]).unwrap(), vec![0]);
        assert_eq!(g.inertia_group(&p29[0]).unwrap(), vec![0]);
        assert_eq!(g.inertia_group(p2).unwrap(), vec![0, 1]);
        let p11 = &decompose_prime(&k, &BigInt::from(11)).unwrap()[0];
        assert_eq!(g.decomposition_group(p11).unwrap(), vec![0, 1]);
        assert_eq!(g.inertia_group(p11).unwrap(), vec![0]);
    }

    #[test]
    fn decomposition_orders_in_octic() {
        let l = field(&[1, -1, 0, 1, -1, 1, 0, -1, 1]);
        let g = GaloisGroup::compute(&l).unwrap();
        for p in [2i64, 3, 5, 7, 11, 31] {
            for pr in decompose_prime(&l, &BigInt::from(p)).unwrap() {
                assert_eq!(g.decomposition_group(&pr).unwrap().len() as u32, pr.e * pr.f);
                assert_eq!(g.inertia_group(&pr).unwrap().len() as u32, pr.e);
            }
        }
    }

    #[test]
    fn towers() {
        let l = field(&[1, 0, 3, 0, 1]);
        let g = GaloisGroup::compute(&l).unwrap();
        let k = make_field(&quadratic_poly(-5)).unwrap();
        let embs = find_embeddings(&k, &l).unwrap();
        assert_eq!(embs.len(), 2);
        let t = Tower::new(embs[0].clone(), g.clone()).unwrap();
        assert_eq!(t.relative_group().len(), 2);
        assert_eq!(t.degree(), 2);
        assert!(t.ramified().unwrap().is_empty());
        let q = Tower::over_rationals(g.clone());
        assert_eq!(q.relative_group().len(), 4);
        assert_eq!(Tower::trivial(g.clone()).relative_group(), &[0]);
        let bad = Embedding::new(&k, &l, ints(&[0, 1, 0, 0]));
        assert!(bad.is_err());
    }
}
