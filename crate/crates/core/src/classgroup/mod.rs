//! Ideal class groups from factor-base relations, with discrete logarithms.

pub mod cache;
pub mod forms;
pub mod subgroup;

use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::int::primes_up_to;
use crate::arith::matrix::IntMatrix;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::ideal::{decompose_prime, factor_ideal, Ideal, PrimeIdeal};

pub use subgroup::{AbelianStructure, Subgroup};

/// Factor bases are only built below this Minkowski bound.
pub const MAX_MINKOWSKI: u64 = 10_000;
/// Consecutive smooth relations that must leave the lattice unchanged.
pub const SATURATION_RELATIONS: usize = 50;
const RELATION_BUDGET: usize = 200_000;
const SHELL_ELEMENTS: usize = 20_000;
const REDUCTION_BUDGET: usize = 20_000;

/// A class in SNF coordinates, each entry reduced modulo its invariant.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassElement(#[serde(with = "crate::arith::json::vec")] pub Vec<BigInt>);

impl ClassElement {
    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|x| x.is_zero())
    }
}

#[derive(Debug)]
pub struct ClassGroup {
    field: Field,
    factor_base: Vec<PrimeIdeal>,
    relations: Vec<Vec<BigInt>>,
    lattice: IntMatrix,
    invariants: Vec<BigInt>,
    to_snf: IntMatrix,
    gens: IntMatrix,
    oracle: Option<BigInt>,
    memo: Mutex<HashMap<IntMatrix, Vec<BigInt>>>,
}

/// Valuations of elements at a fixed list of primes, with cached powers.
struct Valuator<'a> {
    field: &'a Field,
    primes: &'a [PrimeIdeal],
    powers: Vec<Vec<Ideal>>,
    /// distinct rational primes under `primes`, with the indices above each
    by_p: Vec<(BigInt, Vec<usize>)>,
}

impl<'a> Valuator<'a> {
    fn new(field: &'a Field, primes: &'a [PrimeIdeal]) -> Self {
        let mut by_p: Vec<(BigInt, Vec<usize>)> = Vec::new();
        for (i, pr) in primes.iter().enumerate() {
            match by_p.iter_mut().find(|(p, _)| *p == pr.p) {
                Some((_, v)) => v.push(i),
                None => by_p.push((pr.p.clone(), vec![i])),
            }
        }
        Valuator {
            field,
            primes,
            powers: primes.iter().map(|p| vec![p.ideal.clone()]).collect(),
            by_p,
        }
    }

    fn val(&mut self, i: usize, a: &[BigInt], max: u32) -> u32 {
        let mut k = 0;
        while k < max {
            if self.powers[i].len() <= k as usize {
                let next = self.powers[i][k as usize - 1].mul(&self.primes[i].ideal).unwrap();
                self.powers[i].push(next);
            }
            if !self.powers[i][k as usize].contains(a) {
                break;
            }
            k += 1;
        }
        k
    }

    /// Exponent vector of `(a)` if it factors over the primes.
    fn vector(&mut self, a: &[BigInt]) -> Option<Vec<BigInt>> {
        let mut n = self.field.norm(a).abs();
        if n.is_zero() {
            return None;
        }
        let mut out = vec![BigInt::zero(); self.primes.len()];
        for j in 0..self.by_p.len() {
            let p = self.by_p[j].0.clone();
            let mut k = 0u32;
            while (&n % &p).is_zero() {
                n /= &p;
                k += 1;
            }
            if k == 0 {
                continue;
            }
            let mut seen = 0;
            for idx in self.by_p[j].1.clone() {
                let f = self.primes[idx].f;
                let v = self.val(idx, a, k / f);
                seen += v * f;
                out[idx] = BigInt::from(v);
            }
            if seen != k {
                return None;
            }
        }
        n.is_one().then_some(out)
    }
}

/// Integer vectors of length `n`: every nonzero vector with entries in
/// `[-s, s]` (first nonzero entry positive) for growing `s` while the shell
/// stays small, then random vectors with slowly growing entries.
pub(crate) struct SmallVectors {
    n: usize,
    shell: i64,
    cur: Vec<i64>,
    emitted: usize,
    exhaustive_limit: usize,
    rng: ChaCha8Rng,
}

impl SmallVectors {
    pub(crate) fn new(n: usize, exhaustive_limit: usize, seed: u64) -> Self {
        SmallVectors {
            n,
            shell: 1,
            cur: vec![-1; n],
            emitted: 0,
            exhaustive_limit,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    fn advance(&mut self) -> bool {
        let s = self.shell;
        for i in 0..self.n {
            if self.cur[i] < s {
                self.cur[i] += 1;
                return true;
            }
            self.cur[i] = -s;
        }
        false
    }

    fn shell_size(n: usize, s: i64) -> usize {
        let s = s as usize;
        (2 * s + 1).pow(n as u32) - (2 * s - 1).pow(n as u32)
    }
}

impl Iterator for SmallVectors {
    type Item = Vec<i64>;

    fn next(&mut self) -> Option<Vec<i64>> {
        loop {
            if self.emitted + Self::shell_size(self.n, self.shell) / 2 > self.exhaustive_limit
                && self.emitted > 0
                || self.shell > 1_000_000
            {
                let r = 2 + (self.emitted / 5_000) as i64;
                self.emitted += 1;
                let v: Vec<i64> = (0..self.n).map(|_| self.rng.gen_range(-r..=r)).collect();
                if v.iter().any(|&x| x != 0) {
                    return Some(v);
                }
                continue;
            }
            if !self.advance() {
                self.shell += 1;
                let s = self.shell;
                self.cur = vec![-s; self.n];
                continue;
            }
            let v = &self.cur;
            let max = v.iter().map(|x| x.abs()).max().unwrap();
            let first = v.iter().find(|&&x| x != 0);
            if max == self.shell && first.is_some_and(|&x| x > 0) {
                self.emitted += 1;
                return Some(v.clone());
            }
        }
    }
}

fn combine(basis: &[Vec<BigInt>], c: &[i64]) -> Vec<BigInt> {
    let n = basis[0].len();
    let mut out = vec![BigInt::zero(); n];
    for (b, &k) in basis.iter().zip(c) {
        if k == 0 {
            continue;
        }
        let k = BigInt::from(k);
        for (o, x) in out.iter_mut().zip(b) {
            *o += &k * x;
        }
    }
    out
}

/// Running HNF of the relation lattice.
struct RelationLattice {
    rows: usize,
    basis: Option<IntMatrix>,
}

impl RelationLattice {
    fn add(&mut self, v: &[BigInt]) -> bool {
        if v.iter().all(|x| x.is_zero()) {
            return false;
        }
        let mut cols = self.basis.as_ref().map(|b| b.columns()).unwrap_or_default();
        cols.push(v.to_vec());
        let res = IntMatrix::from_columns(self.rows, &cols).hnf();
        let new = res.basis();
        let changed = self.basis.as_ref() != Some(&new);
        self.basis = Some(new);
        changed
    }

    fn full_rank(&self) -> bool {
        self.basis.as_ref().is_some_and(|b| b.cols() == self.rows)
    }

    fn det(&self) -> Option<BigInt> {
        self.full_rank()
            .then(|| self.basis.as_ref().unwrap().diagonal_entries().iter().product())
    }
}

/// Prime ideals of norm at most `bound`.
pub fn factor_base(field: &Field, bound: u64) -> Result<Vec<PrimeIdeal>> {
    let mut fb = Vec::new();
    for p in primes_up_to(bound) {
        for pr in decompose_prime(field, &BigInt::from(p))? {
            if pr.norm() <= &BigInt::from(bound) {
                fb.push(pr);
            }
        }
    }
    Ok(fb)
}

/// Minkowski bound rounded down, checked against the factor-base limit.
pub fn factor_base_bound(field: &Field) -> Result<u64> {
    let m = field.minkowski_bound().floor().to_integer();
    if m >= BigInt::from(MAX_MINKOWSKI) {
        return Err(Error::FactorBaseTooLarge { bound: m });
    }
    Ok(m.to_u64().unwrap())
}

/// Class number from the form-count oracle, for quadratic fields.
pub fn oracle_class_number(field: &Field) -> Option<BigInt> {
    if field.degree() != 2 {
        return None;
    }
    let d = field.disc().to_i64()?;
    Some(BigInt::from(forms::quadratic_class_number(d)))
}

/// Compute `Cl(field)`.
///
/// Relations are collected until the lattice has full rank and
/// [`SATURATION_RELATIONS`] consecutive random smooth relations leave it
/// unchanged. For quadratic fields the order is then compared with the
/// reduced-form count.
pub fn compute_class_group(field: &Field, seed: u64) -> Result<ClassGroup> {
    let bound = factor_base_bound(field)?;
    let fb = factor_base(field, bound)?;
    let r = fb.len();
    let mut lattice = RelationLattice { rows: r, basis: None };
    let mut relations = Vec::new();
    if r > 0 {
        let mut val = Valuator::new(field, &fb);
        let n = field.degree();
        let power_basis: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let mut e = field.zero();
                e[i] = BigInt::one();
                e
            })
            .collect();
        // elements of small height in the power basis
        let mut shells = SmallVectors::new(n, SHELL_ELEMENTS, seed);
        for _ in 0..SHELL_ELEMENTS {
            let c = shells.next().unwrap();
            let a = combine(&power_basis, &c);
            if let Some(v) = val.vector(&a) {
                if lattice.add(&v) {
                    relations.push(a);
                }
                if lattice.det().is_some_and(|d| d.is_one()) {
                    break;
                }
            }
        }
        // small elements of random products of factor-base primes
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let mut quiet = 0;
        let mut tries = 0;
        while !(lattice.full_rank()
            && (quiet >= SATURATION_RELATIONS || lattice.det().is_some_and(|d| d.is_one())))
        {
            tries += 1;
            if tries > RELATION_BUDGET {
                return Err(Error::SaturationFailure(format!(
                    "{} relations, rank {} of {r}",
                    relations.len(),
                    lattice.basis.as_ref().map_or(0, |b| b.cols())
                )));
            }
            let mut a_ideal = Ideal::unit(field);
            for _ in 0..rng.gen_range(1..=3) {
                let i = rng.gen_range(0..r);
                a_ideal = a_ideal.mul(&fb[i].ideal.pow(rng.gen_range(1..=2)))?;
            }
            let basis = a_ideal.reduced_basis();
            let c: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
            if c.iter().all(|&x| x == 0) {
                continue;
            }
            let a = combine(&basis, &c);
            if let Some(v) = val.vector(&a) {
                if lattice.add(&v) {
                    relations.push(a);
                    quiet = 0;
                } else if lattice.full_rank() {
                    quiet += 1;
                }
            }
        }
    }
    let group = ClassGroup::assemble(field, fb, relations, lattice.basis)?;
    if let Some(h) = oracle_class_number(field) {
        if h != group.order() {
            return Err(Error::OracleMismatch {
                relations: group.order(),
                oracle: h,
            });
        }
    }
    Ok(group)
}

impl ClassGroup {
    fn assemble(
        field: &Field,
        factor_base: Vec<PrimeIdeal>,
        relations: Vec<Vec<BigInt>>,
        lattice: Option<IntMatrix>,
    ) -> Result<Self> {
        let r = factor_base.len();
        let lattice = match lattice {
            Some(l) if r > 0 => l,
            _ => IntMatrix::identity(r),
        };
        let (invariants, to_snf, gens) = if r == 0 {
            (Vec::new(), IntMatrix::zeros(0, 0), IntMatrix::zeros(0, 0))
        } else {
            let snf = lattice.snf();
            let d = snf.invariants();
            let keep: Vec<usize> = (0..r).filter(|&i| !d[i].is_one()).collect();
            let uinv = snf
                .u
                .inverse_unimodular()
                .ok_or_else(|| Error::SaturationFailure("singular transform".into()))?;
            let to_snf = IntMatrix::from_rows(&keep.iter().map(|&i| snf.u.row(i)).collect::<Vec<_>>());
            let to_snf = if keep.is_empty() {
                IntMatrix::zeros(0, r)
            } else {
                to_snf
            };
            let gens = IntMatrix::from_columns(r, &keep.iter().map(|&i| uinv.column(i)).collect::<Vec<_>>());
            (keep.iter().map(|&i| d[i].clone()).collect(), to_snf, gens)
        };
        Ok(ClassGroup {
            field: field.clone(),
            factor_base,
            relations,
            lattice,
            invariants,
            to_snf,
            gens,
            oracle: oracle_class_number(field),
            memo: Mutex::new(HashMap::new()),
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn factor_base(&self) -> &[PrimeIdeal] {
        &self.factor_base
    }

    pub fn relations(&self) -> &[Vec<BigInt>] {
        &self.relations
    }

    /// HNF of the relation lattice in factor-base coordinates.
    pub fn relation_lattice(&self) -> &IntMatrix {
        &self.lattice
    }

    /// Invariant factors `d1 | d2 | ...`, all greater than one.
    pub fn invariants(&self) -> &[BigInt] {
        &self.invariants
    }

    pub fn structure(&self) -> AbelianStructure {
        AbelianStructure(self.invariants.clone())
    }

    pub fn order(&self) -> BigInt {
        self.invariants.iter().product()
    }

    pub fn oracle(&self) -> Option<&BigInt> {
        self.oracle.as_ref()
    }

    /// Factor-base exponent vectors of the SNF generators.
    pub fn generator_exponents(&self) -> Vec<Vec<BigInt>> {
        self.gens.columns()
    }

    pub fn identity(&self) -> ClassElement {
        ClassElement(vec![BigInt::zero(); self.invariants.len()])
    }

    pub fn reduce(&self, v: &[BigInt]) -> ClassElement {
        ClassElement(
            v.iter()
                .zip(&self.invariants)
                .map(|(x, d)| x.mod_floor(d))
                .collect(),
        )
    }

    pub fn add(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        let v: Vec<BigInt> = a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect();
        self.reduce(&v)
    }

    pub fn neg(&self, a: &ClassElement) -> ClassElement {
        let v: Vec<BigInt> = a.0.iter().map(|x| -x).collect();
        self.reduce(&v)
    }

    pub fn scale(&self, a: &ClassElement, k: &BigInt) -> ClassElement {
        let v: Vec<BigInt> = a.0.iter().map(|x| x * k).collect();
        self.reduce(&v)
    }

    pub fn element_order(&self, a: &ClassElement) -> BigInt {
        a.0.iter()
            .zip(&self.invariants)
            .fold(BigInt::one(), |acc, (x, d)| acc.lcm(&(d / x.gcd(d))))
    }

    /// Class of a factor-base exponent vector.
    pub fn class_of_exponents(&self, v: &[BigInt]) -> ClassElement {
        if self.invariants.is_empty() {
            return self.identity();
        }
        self.reduce(&self.to_snf.mul_vec(v))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::whole(&self.invariants)
    }

    pub fn subgroup(&self, gens: &[ClassElement]) -> Subgroup {
        let v: Vec<Vec<BigInt>> = gens.iter().map(|g| g.0.clone()).collect();
        Subgroup::generated(&self.invariants, &v)
    }

    fn fb_index(&self, pr: &PrimeIdeal) -> Option<usize> {
        self.factor_base.iter().position(|q| q.ideal == pr.ideal)
    }

    /// Factor-base exponent vector with the class of the prime `pr`.
    ///
    /// Primes outside the factor base are traded for an element `a` of `pr`
    /// with `v_pr(a) = 1` whose other prime factors are smaller.
    fn prime_vector(&self, pr: &PrimeIdeal) -> Result<Vec<BigInt>> {
        let r = self.factor_base.len();
        if let Some(i) = self.fb_index(pr) {
            let mut v = vec![BigInt::zero(); r];
            v[i] = BigInt::one();
            return Ok(v);
        }
        if let Some(v) = self.memo.lock().unwrap().get(pr.ideal.basis()) {
            return Ok(v.clone());
        }
        let field = &self.field;
        let basis = pr.ideal.reduced_basis();
        let square = pr.ideal.mul(&pr.ideal)?;
        let np = pr.norm().clone();
        let seed = np.to_u64().unwrap_or(0) ^ (pr.g.coeffs().len() as u64) << 40;
        let small_primes: Vec<BigInt> = primes_up_to(np.to_u64().unwrap_or(u64::MAX).min(1 << 24))
            .into_iter()
            .map(BigInt::from)
            .collect();
        for c in SmallVectors::new(field.degree(), 5_000, seed).take(REDUCTION_BUDGET) {
            let a = combine(&basis, &c);
            if square.contains(&a) {
                continue;
            }
            let norm = field.norm(&a).abs();
            if norm.is_zero() {
                continue;
            }
            // cofactor must only involve primes of smaller norm
            let mut rest = &norm / &np;
            for p in &small_primes {
                if p >= &np {
                    break;
                }
                while (&rest % p).is_zero() {
                    rest /= p;
                }
            }
            if !rest.is_one() {
                continue;
            }
            let principal = Ideal::principal(field, &a)?;
            let fac = factor_ideal(&principal)?;
            if fac
                .iter()
                .any(|(q, _)| q.ideal != pr.ideal && q.norm() >= &np && self.fb_index(q).is_none())
            {
                continue;
            }
            let mut v = vec![BigInt::zero(); r];
            for (q, e) in &fac {
                if q.ideal == pr.ideal {
                    continue;
                }
                let qv = self.prime_vector(q)?;
                for (x, y) in v.iter_mut().zip(qv) {
                    *x -= y * BigInt::from(*e);
                }
            }
            self.memo
                .lock()
                .unwrap()
                .insert(pr.ideal.basis().clone(), v.clone());
            return Ok(v);
        }
        Err(Error::ReductionBudgetExceeded)
    }

    /// Factor-base exponent vector in the class of `a`.
    pub fn exponents_of(&self, a: &Ideal) -> Result<Vec<BigInt>> {
        if *a.field() != self.field {
            return Err(Error::FieldMismatch);
        }
        let r = self.factor_base.len();
        let mut v = vec![BigInt::zero(); r];
        if self.invariants.is_empty() {
            return Ok(v);
        }
        for (pr, e) in factor_ideal(a)? {
            let pv = self.prime_vector(&pr)?;
            for (x, y) in v.iter_mut().zip(pv) {
                *x += y * BigInt::from(e);
            }
        }
        Ok(v)
    }

    /// Discrete logarithm of the class of `a`.
    pub fn class_of(&self, a: &Ideal) -> Result<ClassElement> {
        if self.invariants.is_empty() {
            if *a.field() != self.field {
                return Err(Error::FieldMismatch);
            }
            return Ok(self.identity());
        }
        Ok(self.class_of_exponents(&self.exponents_of(a)?))
    }

    pub fn class_of_prime(&self, pr: &PrimeIdeal) -> Result<ClassElement> {
        if self.invariants.is_empty() {
            return Ok(self.identity());
        }
        Ok(self.class_of_exponents(&self.prime_vector(pr)?))
    }

    /// A generator of `a` if it is principal.
    ///
    /// Non-principality is decided by [`class_of`](Self::class_of); the
    /// search for a generator of norm `N(a)` enumerates small combinations
    /// of a reduced basis and reports [`Error::SearchBoxExceeded`] if it
    /// runs out.
    pub fn is_principal(&self, a: &Ideal) -> Result<Option<FieldElement>> {
        if !self.class_of(a)?.is_identity() {
            return Ok(None);
        }
        let field = &self.field;
        if a.is_unit() {
            return Ok(Some(FieldElement::from_integral(field, &field.one())));
        }
        let basis = a.reduced_basis();
        let budget = match field.degree() {
            1 | 2 => 400_000,
            3 | 4 => 200_000,
            _ => 100_000,
        };
        for c in SmallVectors::new(field.degree(), budget, 0).take(budget) {
            let x = combine(&basis, &c);
            if field.norm(&x).abs() == *a.norm() && Ideal::principal(field, &x)? == *a {
                return Ok(Some(FieldElement::from_integral(field, &x)));
            }
        }
        Err(Error::SearchBoxExceeded)
    }
}
