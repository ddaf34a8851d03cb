//! Polynomials over a prime field and their factorization.
//!
//! Factorization runs squarefree decomposition, distinct-degree splitting and
//! Cantor-Zassenhaus equal-degree splitting. For `p < 1000` linear factors
//! are found by exhausting the field instead.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::poly::IntPoly;
use crate::error::{Error, Result};

const ROOT_EXHAUSTION_LIMIT: u64 = 1000;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    p: u64,
    coeffs: Vec<u64>,
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    r
}

fn invmod(a: u64, p: u64) -> u64 {
    powmod(a, p - 2, p)
}

impl FpPoly {
    pub fn new(p: u64, mut coeffs: Vec<u64>) -> Self {
        for c in coeffs.iter_mut() {
            *c %= p;
        }
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        FpPoly { p, coeffs }
    }

    pub fn from_int_poly(f: &IntPoly, p: u64) -> Self {
        let bp = BigInt::from(p);
        let c = f
            .coeffs()
            .iter()
            .map(|c| c.mod_floor(&bp).to_u64().unwrap())
            .collect();
        Self::new(p, c)
    }

    pub fn one(p: u64) -> Self {
        Self::new(p, vec![1])
    }

    pub fn x(p: u64) -> Self {
        Self::new(p, vec![0, 1])
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    /// Lift to an integer polynomial with coefficients in `[0, p)`.
    pub fn to_int_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn eval(&self, x: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mulmod(acc, x, self.p) + c) % self.p)
    }

    pub fn monic(&self) -> Self {
        match self.coeffs.last() {
            None => self.clone(),
            Some(&lc) => {
                let inv = invmod(lc, self.p);
                Self::new(
                    self.p,
                    self.coeffs.iter().map(|&c| mulmod(c, inv, self.p)).collect(),
                )
            }
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                (self.coeffs.get(i).copied().unwrap_or(0) + o.coeffs.get(i).copied().unwrap_or(0)) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        let c = (0..n)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = o.coeffs.get(i).copied().unwrap_or(0);
                (a + self.p - b) % self.p
            })
            .collect();
        Self::new(self.p, c)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(self.p, vec![]);
        }
        let mut out = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + mulmod(a, b, self.p)) % self.p;
            }
        }
        Self::new(self.p, out)
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = invmod(*d.coeffs.last().unwrap(), self.p);
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::new(self.p, vec![]), self.clone());
        }
        let mut q = vec![0u64; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = mulmod(r[i], inv, self.p);
            if c == 0 {
                continue;
            }
            q[i - dd] = c;
            for (j, &dj) in d.coeffs.iter().enumerate() {
                let t = mulmod(c, dj, self.p);
                r[i - dd + j] = (r[i - dd + j] + self.p - t) % self.p;
            }
        }
        r.truncate(dd);
        (Self::new(self.p, q), Self::new(self.p, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        let c = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| mulmod(c, i as u64 % self.p, self.p))
            .collect();
        Self::new(self.p, c)
    }

    /// `self^e mod m`
    pub fn pow_mod(&self, e: &BigInt, m: &Self) -> Self {
        let mut result = Self::one(self.p).rem(m);
        let base = self.rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            result = result.mul(&result).rem(m);
            if e.bit(i) {
                result = result.mul(&base).rem(m);
            }
        }
        result
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> Self {
        let p = self.p as usize;
        // coefficients of x^{kp} are c^{1/p} = c in F_p
        let c = self.coeffs.iter().step_by(p).copied().collect();
        Self::new(self.p, c)
    }
}

/// Squarefree factorization over F_p: pairs `(g, e)` with `f = prod g^e`.
fn squarefree(f: &FpPoly) -> Vec<(FpPoly, u32)> {
    let mut out = Vec::new();
    let p = f.p;
    let fd = f.derivative();
    if fd.is_zero() {
        for (g, e) in squarefree(&f.pth_root()) {
            out.push((g, e * p as u32));
        }
        return out;
    }
    let mut c = f.gcd(&fd);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u32;
    while !w.is_one() {
        let y = w.gcd(&c);
        let z = w.div_rem(&y).0;
        if !z.is_one() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_rem(&w).0;
    }
    if !c.is_one() && !c.is_zero() {
        for (g, e) in squarefree(&c.pth_root()) {
            out.push((g, e * p as u32));
        }
    }
    out
}

/// Distinct-degree factorization of a squarefree monic polynomial.
fn distinct_degree(f: &FpPoly) -> Vec<(FpPoly, usize)> {
    let p = f.p;
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x = FpPoly::x(p);
    let mut h = x.clone();
    let mut d = 0;
    let bp = BigInt::from(p);
    while rest.degree().unwrap_or(0) >= 2 * (d + 1) {
        d += 1;
        h = h.pow_mod(&bp, &rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest.monic(), deg));
    }
    out
}

fn roots_by_exhaustion(f: &FpPoly) -> Vec<FpPoly> {
    (0..f.p)
        .filter(|&r| f.eval(r) == 0)
        .map(|r| FpPoly::new(f.p, vec![(f.p - r) % f.p, 1]))
        .collect()
}

/// Equal-degree splitting of a squarefree monic product of degree-`d`
/// irreducibles.
fn equal_degree(f: &FpPoly, d: usize, rng: &mut ChaCha8Rng) -> Vec<FpPoly> {
    let n = f.degree().unwrap();
    if n == d {
        return vec![f.monic()];
    }
    let p = f.p;
    if d == 1 && p < ROOT_EXHAUSTION_LIMIT {
        return roots_by_exhaustion(f);
    }
    loop {
        let a = FpPoly::new(p, (0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let g = if p == 2 {
            // trace map a + a^2 + ... + a^{2^{d-1}}
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..d {
                t = t.mul(&t).rem(f);
                acc = acc.add(&t);
            }
            acc.gcd(f)
        } else {
            let e = (BigInt::from(p).pow(d as u32) - 1) / 2;
            a.pow_mod(&e, f).sub(&FpPoly::one(p)).gcd(f)
        };
        let gd = g.degree().unwrap_or(0);
        if gd > 0 && gd < n {
            let h = f.div_rem(&g).0.monic();
            let mut out = equal_degree(&g, d, rng);
            out.extend(equal_degree(&h, d, rng));
            return out;
        }
    }
}

/// Factor `f mod p` into monic irreducibles with multiplicities, sorted by
/// degree then coefficients.
pub fn factor_poly_mod_p(f: &IntPoly, p: u64) -> Result<Vec<(FpPoly, u32)>> {
    let fp = FpPoly::from_int_poly(f, p);
    if fp.degree() != f.degree() || !fp.coeffs.last().is_some_and(|&c| c == 1) {
        return Err(Error::NonMonicModP { p });
    }
    let seed = p ^ (f.degree().unwrap_or(0) as u64).wrapping_mul(0x9e37_79b9);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, e) in squarefree(&fp) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, &mut rng) {
                out.push((irr, e));
            }
        }
    }
    out.sort_by(|a, b| (a.0.degree(), &a.0.coeffs, a.1).cmp(&(b.0.degree(), &b.0.coeffs, b.1)));
    Ok(out)
}

/// Distinct roots of `f` modulo `p`, ascending.
pub fn roots_mod_p(f: &IntPoly, p: u64) -> Result<Vec<u64>> {
    let mut r: Vec<u64> = factor_poly_mod_p(f, p)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| (p - g.coeffs[0]) % p)
        .collect();
    r.sort_unstable();
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> FpPoly {
        FpPoly::new(p, c.to_vec())
    }

    fn product(fs: &[(FpPoly, u32)], p: u64) -> FpPoly {
        let mut acc = FpPoly::one(p);
        for (g, e) in fs {
            for _ in 0..*e {
                acc = acc.mul(g);
            }
        }
        acc
    }

    #[test]
    fn x2_plus_1_mod_5_splits() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        let fs = factor_poly_mod_p(&f, 5).unwrap();
        // exhaust the field: roots are 2 and 3
        let roots: Vec<u64> = (0..5).filter(|r| (r * r + 1) % 5 == 0).collect();
        assert_eq!(roots, vec![2, 3]);
        assert_eq!(fs, vec![(fp(5, &[2, 1]), 1), (fp(5, &[3, 1]), 1)]);
    }

    #[test]
    fn x2_plus_1_mod_3_is_irreducible() {
        let f = IntPoly::from_i64(&[1, 0, 1]);
        assert!((0..3).all(|r| (r * r + 1) % 3 != 0));
        assert_eq!(factor_poly_mod_p(&f, 3).unwrap(), vec![(fp(3, &[1, 0, 1]), 1)]);
    }

    #[test]
    fn x2_minus_2_mod_2_is_a_square() {
        let f = IntPoly::from_i64(&[-2, 0, 1]);
        assert_eq!(factor_poly_mod_p(&f, 2).unwrap(), vec![(fp(2, &[0, 1]), 2)]);
    }

    #[test]
    fn rejects_non_monic_reduction() {
        let f = IntPoly::from_i64(&[1, 0, 3]);
        assert!(matches!(
            factor_poly_mod_p(&f, 3),
            Err(Error::NonMonicModP { p: 3 })
        ));
    }

    #[test]
    fn cantor_zassenhaus_large_prime() {
        // x^4 + 1 splits completely mod 1009 (1009 = 1 mod 8)
        let f = IntPoly::from_i64(&[1, 0, 0, 0, 1]);
        let fs = factor_poly_mod_p(&f, 1009).unwrap();
        assert_eq!(fs.len(), 4);
        assert_eq!(product(&fs, 1009), FpPoly::from_int_poly(&f, 1009));
        // quadratic factors when p = 3 mod 8
        let fs = factor_poly_mod_p(&f, 1019).unwrap();
        assert_eq!(fs.len(), 2);
        assert!(fs.iter().all(|(g, _)| g.degree() == Some(2)));
    }

    #[test]
    fn characteristic_two_equal_degree() {
        // x^4 + x + 1 is irreducible over F_2; (x^2+x+1)(x^3+x+1)
        let f = IntPoly::from_i64(&[1, 1, 0, 0, 1]);
        assert_eq!(factor_poly_mod_p(&f, 2).unwrap().len(), 1);
        let g = IntPoly::from_i64(&[1, 1, 1]);
        let h = IntPoly::from_i64(&[1, 1, 0, 1]);
        let fs = factor_poly_mod_p(&(&g * &h), 2).unwrap();
        assert_eq!(fs.len(), 2);
        // x^4 + x^2 + 1 = (x^2 + x + 1)^2 over F_2
        let fs = factor_poly_mod_p(&IntPoly::from_i64(&[1, 0, 1, 0, 1]), 2).unwrap();
        assert_eq!(fs, vec![(fp(2, &[1, 1, 1]), 2)]);
        // x^15 - 1 over F_2 has irreducible factors of degrees 1, 2, 4, 4, 4
        let mut c = vec![0i64; 16];
        c[0] = -1;
        c[15] = 1;
        let f = IntPoly::from_i64(&c);
        let fs = factor_poly_mod_p(&f, 2).unwrap();
        let degs: Vec<usize> = fs.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 2, 4, 4, 4]);
        assert_eq!(product(&fs, 2), FpPoly::from_int_poly(&f, 2));
    }

    #[test]
    fn repeated_factors_with_pth_powers() {
        // (x+1)^3 (x^2+1) over F_3: derivative of the cube vanishes
        let a = IntPoly::from_i64(&[1, 1]);
        let b = IntPoly::from_i64(&[1, 0, 1]);
        let f = &(&(&a * &a) * &a) * &b;
        let fs = factor_poly_mod_p(&f, 3).unwrap();
        assert_eq!(fs, vec![(fp(3, &[1, 1]), 3), (fp(3, &[1, 0, 1]), 1)]);
    }
}
