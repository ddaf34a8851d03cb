//! Integral ideals of `Z[theta]` as full-rank lattices in Hermite normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::fp::factor_poly_mod_p;
use crate::arith::int::factor_int;
use crate::arith::lll::lll_reduce;
use crate::arith::matrix::IntMatrix;
use crate::arith::poly::IntPoly;
use crate::error::{Error, Result};
use crate::field::{Embedding, Field};

/// A nonzero integral ideal. The basis columns span the ideal over `Z`.
#[derive(Clone, Debug)]
pub struct Ideal {
    field: Field,
    basis: IntMatrix,
    norm: BigInt,
}

impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.basis == other.basis && *self.field == *other.field
    }
}

impl Eq for Ideal {}

/// HNF of the lattice spanned by `cols`, which must have full rank `n`.
///
/// When `modulus` is given it must lie in the lattice; columns are reduced
/// modulo it first to keep entries small.
fn lattice_hnf(n: usize, cols: &[Vec<BigInt>], modulus: Option<&BigInt>) -> Option<IntMatrix> {
    let mut all: Vec<Vec<BigInt>> = match modulus {
        Some(m) => cols
            .iter()
            .map(|c| c.iter().map(|x| x.mod_floor(m)).collect::<Vec<_>>())
            .filter(|c: &Vec<BigInt>| c.iter().any(|x| !x.is_zero()))
            .collect(),
        None => cols.to_vec(),
    };
    if let Some(m) = modulus {
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = m.clone();
            all.push(e);
        }
    }
    if all.is_empty() {
        return None;
    }
    let res = IntMatrix::from_columns(n, &all).hnf();
    (res.rank == n).then(|| res.basis())
}

impl Ideal {
    fn from_hnf(field: &Field, basis: IntMatrix) -> Self {
        let norm = basis.diagonal_entries().iter().product::<BigInt>().abs();
        Ideal {
            field: field.clone(),
            basis,
            norm,
        }
    }

    pub fn unit(field: &Field) -> Self {
        Self::from_hnf(field, IntMatrix::identity(field.degree()))
    }

    /// `a O` for a nonzero integral element `a`.
    pub fn principal(field: &Field, a: &[BigInt]) -> Result<Self> {
        let m = field.mult_matrix(a);
        let nrm = m.det().abs();
        if nrm.is_zero() {
            return Err(Error::Unsupported("principal ideal of zero".into()));
        }
        let basis = lattice_hnf(field.degree(), &m.columns(), Some(&nrm)).unwrap();
        Ok(Self::from_hnf(field, basis))
    }

    /// `(m)` for a nonzero rational integer `m`.
    pub fn from_int(field: &Field, m: &BigInt) -> Self {
        let n = field.degree();
        Self::from_hnf(field, IntMatrix::diagonal(&vec![m.abs(); n]))
    }

    /// The ideal generated by the given elements over `O`.
    ///
    /// `multiple`, if known, is a nonzero integer lying in the ideal.
    pub fn from_generators(field: &Field, gens: &[Vec<BigInt>], multiple: Option<&BigInt>) -> Result<Self> {
        let n = field.degree();
        let theta = field.theta();
        let mut cols = Vec::with_capacity(gens.len() * n);
        for g in gens {
            let mut cur = g.clone();
            for j in 0..n {
                cols.push(cur.clone());
                if j + 1 < n {
                    cur = field.mul(&cur, &theta);
                }
            }
        }
        let basis = lattice_hnf(n, &cols, multiple)
            .ok_or_else(|| Error::Unsupported("generators span a degenerate lattice".into()))?;
        Ok(Self::from_hnf(field, basis))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn is_unit(&self) -> bool {
        self.norm.is_one()
    }

    /// Smallest positive rational integer in the ideal.
    pub fn minimum(&self) -> BigInt {
        // the first HNF column is (a11, 0, ..., 0)
        self.basis[(0, 0)].clone()
    }

    fn check_field(&self, other: &Ideal) -> Result<()> {
        if *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.basis.solve_upper_triangular(v).is_some()
    }

    /// `other` is a subset of `self`, i.e. `self` divides `other`.
    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        *self.field == *other.field && other.basis.columns().iter().all(|c| self.contains(c))
    }

    /// Closure under multiplication by `theta`.
    pub fn is_theta_stable(&self) -> bool {
        let theta = self.field.theta();
        self.basis
            .columns()
            .iter()
            .all(|c| self.contains(&self.field.mul(c, &theta)))
    }

    pub fn mul(&self, other: &Ideal) -> Result<Ideal> {
        self.check_field(other)?;
        if self.is_unit() {
            return Ok(other.clone());
        }
        if other.is_unit() {
            return Ok(self.clone());
        }
        let a = self.basis.columns();
        let b = other.basis.columns();
        let mut cols = Vec::with_capacity(a.len() * b.len());
        for x in &a {
            for y in &b {
                cols.push(self.field.mul(x, y));
            }
        }
        let m = &self.norm * &other.norm;
        let basis = lattice_hnf(self.field.degree(), &cols, Some(&m)).unwrap();
        Ok(Self::from_hnf(&self.field, basis))
    }

    pub fn pow(&self, e: u32) -> Ideal {
        let mut r = Ideal::unit(&self.field);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                r = r.mul(&base).unwrap();
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).unwrap();
            }
        }
        r
    }

    /// Sum `a + b` (the gcd of the two ideals).
    pub fn add(&self, other: &Ideal) -> Result<Ideal> {
        self.check_field(other)?;
        let mut cols = self.basis.columns();
        cols.extend(other.basis.columns());
        let m = self.norm.clone().min(other.norm.clone());
        let basis = lattice_hnf(self.field.degree(), &cols, Some(&m)).unwrap();
        Ok(Self::from_hnf(&self.field, basis))
    }

    /// `a O_L` for an embedding `K -> L`. With an automorphism of `K` this
    /// is the Galois image of the ideal.
    pub fn extend(&self, emb: &Embedding) -> Result<Ideal> {
        if **emb.source() != *self.field {
            return Err(Error::FieldMismatch);
        }
        let target = emb.target();
        let gens: Vec<Vec<BigInt>> = self.basis.columns().iter().map(|c| emb.apply(c)).collect();
        Ideal::from_generators(target, &gens, Some(&self.norm))
    }

    /// A short `Z`-basis, for small-element enumeration.
    pub fn reduced_basis(&self) -> Vec<Vec<BigInt>> {
        lll_reduce(&self.basis.columns())
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "ideal of norm {} with HNF {:?}",
            self.norm,
            self.basis.columns()
        )
    }
}

/// A prime ideal `(p, g(theta))` together with its splitting data over `Q`.
#[derive(Clone, Debug)]
pub struct PrimeIdeal {
    pub p: BigInt,
    pub g: IntPoly,
    pub e: u32,
    pub f: u32,
    pub ideal: Ideal,
}

impl PartialEq for PrimeIdeal {
    fn eq(&self, other: &Self) -> bool {
        self.ideal == other.ideal
    }
}

impl PrimeIdeal {
    pub fn norm(&self) -> &BigInt {
        self.ideal.norm()
    }

    /// Compact serializable description.
    pub fn summary(&self) -> PrimeSummary {
        PrimeSummary {
            p: self.p.clone(),
            g: self.g.clone(),
            e: self.e,
            f: self.f,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeSummary {
    #[serde(with = "crate::arith::json::int")]
    pub p: BigInt,
    pub g: IntPoly,
    pub e: u32,
    pub f: u32,
}

pub(crate) fn small_prime(p: &BigInt) -> Result<u64> {
    p.to_u64()
        .filter(|&x| x < (1 << 62))
        .ok_or_else(|| Error::Unsupported(format!("prime {p} out of range")))
}

/// The primes above `p`, from the factorization of the defining polynomial
/// modulo `p`.
pub fn decompose_prime(field: &Field, p: &BigInt) -> Result<Vec<PrimeIdeal>> {
    let pu = small_prime(p)?;
    let mut out = Vec::new();
    for (g, e) in factor_poly_mod_p(field.poly(), pu)? {
        let lift = g.to_int_poly();
        let f = g.degree().unwrap() as u32;
        let gen = field.reduce_poly(&lift);
        let ideal = Ideal::from_generators(field, &[field.int(p), gen], Some(p))?;
        assert_eq!(ideal.norm(), &p.pow(f), "prime ideal norm");
        out.push(PrimeIdeal {
            p: p.clone(),
            g: lift,
            e,
            f,
            ideal,
        });
    }
    Ok(out)
}

/// Exponent of the prime `pr` in `a`.
pub fn valuation(a: &Ideal, pr: &PrimeIdeal) -> u32 {
    let mut k = 0;
    let mut power = pr.ideal.clone();
    while power.contains_ideal(a) {
        k += 1;
        power = power.mul(&pr.ideal).unwrap();
    }
    k
}

pub type FactoredIdeal = Vec<(PrimeIdeal, u32)>;

/// Prime factorization, primes grouped by ascending rational prime.
pub fn factor_ideal(a: &Ideal) -> Result<FactoredIdeal> {
    let mut out = Vec::new();
    if a.is_unit() {
        return Ok(out);
    }
    for (p, vp) in factor_int(a.norm()) {
        let mut seen = 0u32;
        for pr in decompose_prime(a.field(), &p)? {
            let v = valuation(a, &pr);
            if v > 0 {
                seen += v * pr.f;
                out.push((pr, v));
            }
        }
        assert_eq!(seen, vp, "factorization does not account for the norm");
    }
    Ok(out)
}

pub fn product(field: &Field, fac: &[(PrimeIdeal, u32)]) -> Ideal {
    fac.iter().fold(Ideal::unit(field), |acc, (pr, e)| {
        acc.mul(&pr.ideal.pow(*e)).unwrap()
    })
}

/// Product of all primes of absolute norm `p^f`; the unit ideal if none.
pub fn ostrowski_ideal(field: &Field, p: &BigInt, f: u32) -> Result<Ideal> {
    let mut acc = Ideal::unit(field);
    for pr in decompose_prime(field, p)? {
        if pr.f == f {
            acc = acc.mul(&pr.ideal)?;
        }
    }
    Ok(acc)
}

/// Does the prime `big` of `L` lie over the prime `small` of `K`?
pub fn lies_over(big: &PrimeIdeal, small: &PrimeIdeal, emb: &Embedding) -> Result<bool> {
    if big.p != small.p {
        return Ok(false);
    }
    Ok(big.ideal.contains_ideal(&small.ideal.extend(emb)?))
}

/// Relative ramification and residue degree of `big` over `small`.
pub fn relative_ef(big: &PrimeIdeal, small: &PrimeIdeal) -> (u32, u32) {
    debug_assert!(big.e.is_multiple_of(small.e) && big.f.is_multiple_of(small.f));
    (big.e / small.e, big.f / small.f)
}

/// The prime of `K` under `big` and `N_{L/K}(big)` as `(prime, exponent)`.
pub fn relative_norm(big: &PrimeIdeal, emb: &Embedding) -> Result<(PrimeIdeal, u32)> {
    for small in decompose_prime(emb.source(), &big.p)? {
        if lies_over(big, &small, emb)? {
            let f = big.f / small.f;
            return Ok((small, f));
        }
    }
    Err(Error::EmbeddingMismatch(format!(
        "no prime of the base field lies under a prime above {}",
        big.p
    )))
}

/// Primes of `L` above the prime `small` of `K`.
pub fn primes_above(small: &PrimeIdeal, emb: &Embedding) -> Result<Vec<PrimeIdeal>> {
    let ext = small.ideal.extend(emb)?;
    Ok(decompose_prime(emb.target(), &small.p)?
        .into_iter()
        .filter(|big| big.ideal.contains_ideal(&ext))
        .collect())
}

/// Product of all primes of `L` whose relative norm is `small^f`; the unit
/// ideal if there are none.
pub fn relative_ostrowski_ideal(emb: &Embedding, small: &PrimeIdeal, f: u32) -> Result<Ideal> {
    let mut acc = Ideal::unit(emb.target());
    for big in primes_above(small, emb)? {
        if big.f / small.f == f {
            acc = acc.mul(&big.ideal)?;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn field(c: &[i64]) -> Field {
        make_field(&IntPoly::from_i64(c)).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn splitting_in_q_sqrt_minus_5() {
        let k = field(&[5, 0, 1]);
        let two = decompose_prime(&k, &big(2)).unwrap();
        assert_eq!(two.len(), 1);
        assert_eq!((two[0].e, two[0].f), (2, 1));
        let expect = Ideal::from_generators(&k, &[ints(&[2, 0]), ints(&[1, 1])], None).unwrap();
        assert_eq!(two[0].ideal, expect);
        // -5 = 13^2 mod 29, while -5 is a non-residue mod 11
        let split = decompose_prime(&k, &big(29)).unwrap();
        assert_eq!(split.len(), 2);
        assert!(split.iter().all(|p| p.e == 1 && p.f == 1));
        assert_eq!(decompose_prime(&k, &big(11)).unwrap()[0].f, 2);
        let thirteen = decompose_prime(&k, &big(13)).unwrap();
        assert_eq!(thirteen.len(), 1);
        assert_eq!((thirteen[0].e, thirteen[0].f), (1, 2));
    }

    #[test]
    fn products() {
        let k = field(&[5, 0, 1]);
        let p2 = Ideal::from_generators(&k, &[ints(&[2, 0]), ints(&[1, 1])], None).unwrap();
        assert_eq!(p2.mul(&Ideal::unit(&k)).unwrap(), p2);
        assert_eq!(p2.pow(2), Ideal::from_int(&k, &big(2)));
        let a = Ideal::from_generators(&k, &[ints(&[3, 0]), ints(&[1, 1])], None).unwrap();
        let b = Ideal::from_generators(&k, &[ints(&[3, 0]), ints(&[-1, 1])], None).unwrap();
        assert_eq!(a.mul(&b).unwrap(), Ideal::from_int(&k, &big(3)));
        assert_eq!(a.mul(&b).unwrap().norm(), &big(9));
    }

    #[test]
    fn decomposition_reassembles() {
        let l = field(&[1, 0, 3, 0, 1]);
        for p in [2i64, 3, 5, 7, 11, 29] {
            let primes = decompose_prime(&l, &big(p)).unwrap();
            let sum: u32 = primes.iter().map(|q| q.e * q.f).sum();
            assert_eq!(sum, 4);
            let fac: Vec<(PrimeIdeal, u32)> = primes.iter().map(|q| (q.clone(), q.e)).collect();
            assert_eq!(product(&l, &fac), Ideal::from_int(&l, &big(p)));
        }
    }

    #[test]
    fn factorization_roundtrip() {
        let l = field(&[1, 0, 3, 0, 1]);
        let a = Ideal::principal(&l, &ints(&[3, 1, -2, 5])).unwrap();
        let fac = factor_ideal(&a).unwrap();
        assert_eq!(product(&l, &fac), a);
    }

    #[test]
    fn principal_norm_is_element_norm() {
        let k = field(&[5, 0, 1]);
        let a = Ideal::principal(&k, &ints(&[1, 1])).unwrap();
        assert_eq!(a.norm(), &big(6));
        assert!(a.is_theta_stable());
    }

    #[test]
    fn ostrowski_ideals_of_q_sqrt_minus_5() {
        let k = field(&[5, 0, 1]);
        let two = ostrowski_ideal(&k, &big(2), 1).unwrap();
        assert_eq!(two.norm(), &big(2));
        assert!(ostrowski_ideal(&k, &big(13), 1).unwrap().is_unit());
        assert_eq!(
            ostrowski_ideal(&k, &big(29), 1).unwrap(),
            Ideal::from_int(&k, &big(29))
        );
    }

    #[test]
    fn extension_along_embedding() {
        let k = field(&[1, 0, 1]);
        let l = field(&[1, 0, 0, 0, 1]);
        let emb = Embedding::new(&k, &l, ints(&[0, 0, 1, 0])).unwrap();
        let p = &decompose_prime(&k, &big(2)).unwrap()[0];
        let ext = p.ideal.extend(&emb).unwrap();
        assert_eq!(ext.norm(), &big(4));
        assert!(Ideal::unit(&k).extend(&emb).unwrap().is_unit());
        let alpha = ints(&[2, 3]);
        let lhs = Ideal::principal(&k, &alpha).unwrap().extend(&emb).unwrap();
        assert_eq!(lhs, Ideal::principal(&l, &emb.apply(&alpha)).unwrap());
        let above = primes_above(p, &emb).unwrap();
        assert_eq!(above.len(), 1);
        assert_eq!(relative_ef(&above[0], p), (2, 1));
        let (under, f) = relative_norm(&above[0], &emb).unwrap();
        assert_eq!(under, *p);
        assert_eq!(f, 1);
    }

    #[test]
    fn relative_ostrowski_over_rationals() {
        let l = field(&[5, 0, 1]);
        let emb = Embedding::from_rationals(&l);
        let q = crate::field::NumberField::rationals();
        for p in [2i64, 3, 5, 13] {
            let pq = &decompose_prime(&q, &big(p)).unwrap()[0];
            for f in 1..=2 {
                assert_eq!(
                    relative_ostrowski_ideal(&emb, pq, f).unwrap(),
                    ostrowski_ideal(&l, &big(p), f).unwrap()
                );
            }
        }
    }
}
