//! Monogenic number fields `Q(theta)` with `O = Z[theta]`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::fp::{factor_poly_mod_p, FpPoly};
use crate::arith::hensel::hensel_root_lift;
use crate::arith::int::{balanced_mod, factor_int, primes_up_to};
use crate::arith::matrix::IntMatrix;
use crate::arith::poly::IntPoly;
use crate::error::{Error, Result};

/// Good primes consulted for factor-degree patterns.
const PATTERN_PRIMES: usize = 40;
/// Search limit for a completely split prime in the irreducibility fallback.
const SPLIT_PRIME_LIMIT: u64 = 50_000;

/// A number field given by a monic irreducible polynomial whose equation
/// order is maximal.
#[derive(Debug, PartialEq, Eq)]
pub struct NumberField {
    poly: IntPoly,
    degree: usize,
    disc: BigInt,
    r1: usize,
    r2: usize,
    minkowski: BigRational,
    /// `theta^k` on the power basis for `k < 2n - 1`.
    powers: Vec<Vec<BigInt>>,
}

pub type Field = Arc<NumberField>;

/// Validate `f` and build its field.
///
/// Rejects reducible polynomials and polynomials whose equation order is not
/// the full ring of integers.
pub fn make_field(f: &IntPoly) -> Result<Field> {
    let n = f.degree().unwrap_or(0);
    if !(2..=8).contains(&n) {
        return Err(Error::DegreeOutOfRange(n));
    }
    if !f.is_monic() {
        return Err(Error::NotMonic);
    }
    let disc = f.discriminant();
    if disc.is_zero() {
        return Err(Error::NotSquarefree);
    }
    certify_irreducible(f, &disc)?;
    for (p, e) in factor_int(&disc) {
        if e >= 2 && !dedekind_maximal(f, &p)? {
            return Err(Error::NonMonogenicOrder { prime: p });
        }
    }
    let (r1, r2) = signature(f)?;
    Ok(Arc::new(NumberField::assemble(f.clone(), disc, r1, r2)))
}

impl NumberField {
    /// The rationals, presented as `Q(theta)` with `theta = 0`.
    ///
    /// Lets absolute and relative code share one path: every field is an
    /// extension of this one.
    pub fn rationals() -> Field {
        Arc::new(Self::assemble(IntPoly::x(), BigInt::one(), 1, 0))
    }

    fn assemble(poly: IntPoly, disc: BigInt, r1: usize, r2: usize) -> Self {
        let n = poly.degree().unwrap();
        let minkowski = minkowski_enclosure(n, r2, &disc);
        let mut powers = Vec::with_capacity(2 * n);
        let mut cur = vec![BigInt::zero(); n];
        cur[0] = BigInt::one();
        if n == 1 {
            powers.push(cur);
            powers.push(vec![BigInt::zero()]);
        } else {
            for _ in 0..2 * n - 1 {
                powers.push(cur.clone());
                // multiply by theta: shift and fold the top coefficient
                let top = cur[n - 1].clone();
                for i in (1..n).rev() {
                    cur[i] = cur[i - 1].clone();
                }
                cur[0] = BigInt::zero();
                if !top.is_zero() {
                    for (i, c) in cur.iter_mut().enumerate() {
                        *c -= &top * poly.coeff(i);
                    }
                }
            }
        }
        NumberField {
            poly,
            degree: n,
            disc,
            r1,
            r2,
            minkowski,
            powers,
        }
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn disc(&self) -> &BigInt {
        &self.disc
    }

    pub fn signature(&self) -> (usize, usize) {
        (self.r1, self.r2)
    }

    pub fn minkowski_bound(&self) -> &BigRational {
        &self.minkowski
    }

    pub fn is_rationals(&self) -> bool {
        self.degree == 1
    }

    /// Rational primes dividing the discriminant.
    pub fn ramified_primes(&self) -> Vec<BigInt> {
        if self.disc.abs().is_one() {
            return Vec::new();
        }
        factor_int(&self.disc).into_iter().map(|(p, _)| p).collect()
    }

    pub fn zero(&self) -> Vec<BigInt> {
        vec![BigInt::zero(); self.degree]
    }

    pub fn one(&self) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = BigInt::one();
        v
    }

    /// Power-basis coordinates of the integer `c`.
    pub fn int(&self, c: &BigInt) -> Vec<BigInt> {
        let mut v = self.zero();
        v[0] = c.clone();
        v
    }

    pub fn theta(&self) -> Vec<BigInt> {
        if self.degree == 1 {
            return self.zero();
        }
        let mut v = self.zero();
        v[1] = BigInt::one();
        v
    }

    /// Reduce an integer polynomial in `theta` to power-basis coordinates.
    pub fn reduce_poly(&self, g: &IntPoly) -> Vec<BigInt> {
        let reduced = if self.degree == 1 {
            IntPoly::constant(g.eval(&BigInt::zero()))
        } else {
            g.rem_monic(&self.poly)
        };
        (0..self.degree).map(|i| reduced.coeff(i)).collect()
    }

    /// Product of two integral elements in coordinates.
    pub fn mul(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        let n = self.degree;
        let mut prod = vec![BigInt::zero(); 2 * n - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    prod[i + j] += x * y;
                }
            }
        }
        let mut out = prod[..n].to_vec();
        for (k, c) in prod.iter().enumerate().skip(n) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(&self.powers[k]) {
                *o += c * t;
            }
        }
        out
    }

    pub fn add(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn scale(&self, a: &[BigInt], k: &BigInt) -> Vec<BigInt> {
        a.iter().map(|x| x * k).collect()
    }

    pub fn pow(&self, a: &[BigInt], e: u32) -> Vec<BigInt> {
        let mut r = self.one();
        for _ in 0..e {
            r = self.mul(&r, a);
        }
        r
    }

    /// Evaluate an integer polynomial at an integral element.
    pub fn eval_poly(&self, g: &IntPoly, a: &[BigInt]) -> Vec<BigInt> {
        g.coeffs().iter().rev().fold(self.zero(), |acc, c| {
            let mut v = self.mul(&acc, a);
            v[0] += c;
            v
        })
    }

    /// Matrix of multiplication by `a`: column `j` holds `a * theta^j`.
    pub fn mult_matrix(&self, a: &[BigInt]) -> IntMatrix {
        let n = self.degree;
        let mut cols = Vec::with_capacity(n);
        let mut cur = a.to_vec();
        let theta = self.theta();
        for j in 0..n {
            cols.push(cur.clone());
            if j + 1 < n {
                cur = self.mul(&cur, &theta);
            }
        }
        IntMatrix::from_columns(n, &cols)
    }

    /// Absolute norm of an integral element.
    pub fn norm(&self, a: &[BigInt]) -> BigInt {
        self.mult_matrix(a).det()
    }

    pub fn trace(&self, a: &[BigInt]) -> BigInt {
        let m = self.mult_matrix(a);
        (0..self.degree).map(|i| m[(i, i)].clone()).sum()
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[x]/({})", self.poly)
    }
}

/// An element of a field with rational power-basis coordinates.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    coords: Vec<BigRational>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.field, &other.field) && self.coords == other.coords
    }
}

impl FieldElement {
    pub fn new(field: &Field, coords: Vec<BigRational>) -> Result<Self> {
        if coords.len() != field.degree() {
            return Err(Error::Unsupported(format!(
                "expected {} coordinates, got {}",
                field.degree(),
                coords.len()
            )));
        }
        Ok(FieldElement {
            field: field.clone(),
            coords,
        })
    }

    pub fn from_integral(field: &Field, coords: &[BigInt]) -> Self {
        assert_eq!(coords.len(), field.degree());
        FieldElement {
            field: field.clone(),
            coords: coords
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integral_coords(&self) -> Option<Vec<BigInt>> {
        self.is_integral()
            .then(|| self.coords.iter().map(|c| c.to_integer()).collect())
    }

    fn same_field(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Common denominator and the scaled integral coordinates.
    fn clear_denominators(&self) -> (BigInt, Vec<BigInt>) {
        let d = self
            .coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let v = self
            .coords
            .iter()
            .map(|c| (c * BigRational::from_integer(d.clone())).to_integer())
            .collect();
        (d, v)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_field(other)?;
        let (da, a) = self.clear_denominators();
        let (db, b) = other.clear_denominators();
        let prod = self.field.mul(&a, &b);
        let den = da * db;
        let coords = prod
            .into_iter()
            .map(|c| BigRational::new(c, den.clone()))
            .collect();
        Ok(FieldElement {
            field: self.field.clone(),
            coords,
        })
    }

    pub fn norm(&self) -> BigRational {
        let (d, a) = self.clear_denominators();
        let n = self.field.degree() as u32;
        BigRational::new(self.field.norm(&a), d.pow(n))
    }
}

/// A field homomorphism `K -> L`, fixed by the image of `K`'s generator.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: Field,
    target: Field,
    /// Images of `theta_K^j` for `j < [K:Q]`.
    powers: Vec<Vec<BigInt>>,
}

impl PartialEq for Embedding {
    fn eq(&self, other: &Self) -> bool {
        self.source == other.source && self.target == other.target && self.powers == other.powers
    }
}

impl Eq for Embedding {}

impl Embedding {
    /// Checks that `image` is a root of `K`'s defining polynomial in `L`.
    pub fn new(source: &Field, target: &Field, image: Vec<BigInt>) -> Result<Self> {
        if image.len() != target.degree() {
            return Err(Error::InvalidEmbedding(format!(
                "image has {} coordinates, target degree is {}",
                image.len(),
                target.degree()
            )));
        }
        if !target.degree().is_multiple_of(source.degree()) {
            return Err(Error::InvalidEmbedding(format!(
                "degree {} does not divide {}",
                source.degree(),
                target.degree()
            )));
        }
        let value = target.eval_poly(source.poly(), &image);
        if value.iter().any(|c| !c.is_zero()) {
            return Err(Error::InvalidEmbedding(format!(
                "image is not a root of {}",
                source.poly()
            )));
        }
        let mut powers = Vec::with_capacity(source.degree());
        let mut cur = target.one();
        for _ in 0..source.degree() {
            powers.push(cur.clone());
            cur = target.mul(&cur, &image);
        }
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            powers,
        })
    }

    /// The inclusion `Q -> L`.
    pub fn from_rationals(target: &Field) -> Self {
        Embedding {
            source: NumberField::rationals(),
            target: target.clone(),
            powers: vec![target.one()],
        }
    }

    pub fn identity(field: &Field) -> Self {
        Self::new(field, field, field.theta()).expect("theta is a root of its own polynomial")
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    /// Image of `theta_K`.
    pub fn image(&self) -> Vec<BigInt> {
        if self.powers.len() == 1 {
            self.target.zero()
        } else {
            self.powers[1].clone()
        }
    }

    pub fn relative_degree(&self) -> usize {
        self.target.degree() / self.source.degree()
    }

    /// Map integral coordinates of `K` to coordinates of `L`.
    pub fn apply(&self, a: &[BigInt]) -> Vec<BigInt> {
        let mut out = self.target.zero();
        for (c, p) in a.iter().zip(&self.powers) {
            if c.is_zero() {
                continue;
            }
            for (o, t) in out.iter_mut().zip(p) {
                *o += c * t;
            }
        }
        out
    }

    /// `self` followed by `next`.
    pub fn then(&self, next: &Embedding) -> Result<Embedding> {
        if *self.target != *next.source {
            return Err(Error::EmbeddingMismatch(
                "target of the first map is not the source of the second".into(),
            ));
        }
        if self.source.is_rationals() {
            return Ok(Embedding::from_rationals(&next.target));
        }
        Embedding::new(&self.source, &next.target, next.apply(&self.image()))
    }
}

/// Number of real roots and complex pairs, by a Sturm sequence over `Q`.
pub fn signature(f: &IntPoly) -> Result<(usize, usize)> {
    let n = f.degree().ok_or(Error::NotSquarefree)?;
    if n == 0 {
        return Ok((0, 0));
    }
    if f.discriminant().is_zero() {
        return Err(Error::NotSquarefree);
    }
    let to_q = |p: &IntPoly| -> Vec<BigRational> {
        p.coeffs()
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect()
    };
    let mut chain = vec![to_q(f), to_q(&f.derivative())];
    loop {
        let k = chain.len();
        let r = qpoly_rem(&chain[k - 2], &chain[k - 1]);
        if r.is_empty() {
            break;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
    let sign_changes = |at_plus: bool| -> usize {
        let signs: Vec<bool> = chain
            .iter()
            .map(|p| {
                let lead_pos = p.last().unwrap().is_positive();
                let odd = (p.len() - 1) % 2 == 1;
                if at_plus || !odd {
                    lead_pos
                } else {
                    !lead_pos
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    let real = sign_changes(false) - sign_changes(true);
    Ok((real, (n - real) / 2))
}

fn qpoly_rem(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1;
        let q = &r[k] / &lb;
        for (j, bj) in b.iter().enumerate() {
            r[k - db + j] = &r[k - db + j] - &q * bj;
        }
        r.pop();
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// A rational upper bound for `(n!/n^n) (4/pi)^r2 sqrt|d|`.
fn minkowski_enclosure(n: usize, r2: usize, disc: &BigInt) -> BigRational {
    let fact: BigInt = (1..=n).map(BigInt::from).product();
    let nn = BigInt::from(n).pow(n as u32);
    // pi > 3.14159265, so 4/pi is bounded above by 4 * 10^8 / 314159265
    let four_over_pi = BigRational::new(BigInt::from(400_000_000u64), BigInt::from(314_159_265u64));
    let scale = BigInt::from(1_000_000u64);
    let radicand = disc.abs() * &scale * &scale;
    let mut root = radicand.sqrt();
    if &root * &root < radicand {
        root += 1;
    }
    let sqrt_up = BigRational::new(root, scale);
    let mut m = BigRational::new(fact, nn) * sqrt_up;
    for _ in 0..r2 {
        m *= &four_over_pi;
    }
    m
}

/// Dedekind criterion: is `Z[theta]` maximal at `p`?
pub fn dedekind_maximal(f: &IntPoly, p: &BigInt) -> Result<bool> {
    let pu = p
        .to_u64_digits()
        .1
        .first()
        .copied()
        .filter(|_| p.bits() <= 63)
        .ok_or_else(|| Error::Unsupported(format!("prime {p} too large for the Dedekind test")))?;
    let factors = factor_poly_mod_p(f, pu)?;
    let mut g = IntPoly::one();
    let mut h = IntPoly::one();
    for (fac, e) in &factors {
        let lift = fac.to_int_poly();
        g = &g * &lift;
        for _ in 1..*e {
            h = &h * &lift;
        }
    }
    let gh = &g * &h;
    let diff = &gh - f;
    let big_f = IntPoly::new(
        diff.coeffs()
            .iter()
            .map(|c| {
                debug_assert!((c % p).is_zero());
                c / p
            })
            .collect(),
    );
    let fbar = FpPoly::from_int_poly(&big_f, pu);
    let gbar = FpPoly::from_int_poly(&g, pu);
    let hbar = FpPoly::from_int_poly(&h, pu);
    let d = fbar.gcd(&gbar).gcd(&hbar);
    Ok(d.degree() == Some(0))
}

/// Subset sums of the factor degrees, excluding `0` and `n`.
fn possible_factor_degrees(degs: &[usize], n: usize) -> Vec<bool> {
    let mut reach = vec![false; n + 1];
    reach[0] = true;
    for &d in degs {
        for s in (d..=n).rev() {
            if reach[s - d] {
                reach[s] = true;
            }
        }
    }
    reach[0] = false;
    reach[n] = false;
    reach
}

/// Prove irreducibility over `Z` or exhibit a factor degree.
pub fn certify_irreducible(f: &IntPoly, disc: &BigInt) -> Result<()> {
    let n = f.degree().unwrap();
    let mut candidates = vec![true; n + 1];
    candidates[0] = false;
    candidates[n] = false;
    let mut used = 0;
    for p in primes_up_to(2000) {
        if used == PATTERN_PRIMES || !candidates.iter().any(|&c| c) {
            break;
        }
        if (disc % p).is_zero() {
            continue;
        }
        used += 1;
        let degs: Vec<usize> = factor_poly_mod_p(f, p)?
            .iter()
            .map(|(g, _)| g.degree().unwrap())
            .collect();
        let reach = possible_factor_degrees(&degs, n);
        for (c, r) in candidates.iter_mut().zip(reach) {
            *c &= r;
        }
    }
    let remaining: Vec<usize> = (1..n).filter(|&d| candidates[d] && d <= n / 2).collect();
    if remaining.is_empty() {
        return Ok(());
    }
    // f splits completely mod some q: every factor over Z is a product of
    // linear factors mod q^k, with coefficients bounded by 2^n |f|_1
    let q = primes_up_to(SPLIT_PRIME_LIMIT)
        .into_iter()
        .filter(|&q| !(disc % q).is_zero())
        .find(|&q| {
            factor_poly_mod_p(f, q)
                .map(|fs| fs.len() == n && fs.iter().all(|(g, _)| g.degree() == Some(1)))
                .unwrap_or(false)
        })
        .ok_or(Error::IrreducibilityUndecided)?;
    let bq = BigInt::from(q);
    let bound = BigInt::from(2).pow(n as u32 + 1) * f.l1_norm();
    let mut k = 1u32;
    while bq.pow(k) <= bound {
        k += 1;
    }
    let modulus = bq.pow(k);
    let roots: Vec<BigInt> = factor_poly_mod_p(f, q)?
        .iter()
        .map(|(g, _)| hensel_root_lift(f, &bq, &BigInt::from((q - g.coeffs()[0]) % q), k))
        .collect::<Result<_>>()?;
    for d in remaining {
        for subset in combinations(n, d) {
            let mut g = IntPoly::one();
            for &i in &subset {
                g = &g * &IntPoly::linear_root(&roots[i]);
            }
            let g = IntPoly::new(g.coeffs().iter().map(|c| balanced_mod(c, &modulus)).collect());
            if f.div_exact_monic(&g).is_some() {
                return Err(Error::ReduciblePolynomial { factor_degree: d });
            }
        }
    }
    Ok(())
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Defining polynomial of the quadratic field of fundamental-discriminant
/// radicand `d`: `x^2 - x - (d-1)/4` when `d = 1 mod 4`, else `x^2 - d`.
pub fn quadratic_poly(d: i64) -> IntPoly {
    if d.rem_euclid(4) == 1 {
        IntPoly::from_i64(&[-(d - 1) / 4, -1, 1])
    } else {
        IntPoly::from_i64(&[-d, 0, 1])
    }
}
