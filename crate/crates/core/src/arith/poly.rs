//! Dense univariate polynomials over the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::matrix::IntMatrix;

/// Integer polynomial, coefficients lowest degree first.
///
/// Trailing zero coefficients are always stripped, so the zero polynomial
/// has an empty coefficient list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(from = "Coeffs", into = "Coeffs")]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct Coeffs(#[serde(with = "super::json::vec")] Vec<BigInt>);

impl From<Coeffs> for IntPoly {
    fn from(c: Coeffs) -> Self {
        IntPoly::new(c.0)
    }
}

impl From<IntPoly> for Coeffs {
    fn from(p: IntPoly) -> Self {
        Coeffs(p.coeffs)
    }
}

impl From<Vec<BigInt>> for IntPoly {
    fn from(c: Vec<BigInt>) -> Self {
        IntPoly::new(c)
    }
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    /// `x - a`
    pub fn linear_root(a: &BigInt) -> Self {
        Self::new(vec![-a, BigInt::one()])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_mod(&self, x: &BigInt, m: &BigInt) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    pub fn l1_norm(&self) -> BigInt {
        self.coeffs.iter().map(|c| c.abs()).sum()
    }

    /// Division by a monic polynomial: `self = q * d + r`, `deg r < deg d`.
    pub fn div_rem_monic(&self, d: &IntPoly) -> (IntPoly, IntPoly) {
        assert!(d.is_monic(), "divisor must be monic");
        let dd = d.degree().unwrap();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (IntPoly::zero(), self.clone());
        }
        let mut q = vec![BigInt::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            q[i - dd] = c.clone();
            for (j, dj) in d.coeffs.iter().enumerate() {
                r[i - dd + j] -= &c * dj;
            }
        }
        r.truncate(dd);
        (IntPoly::new(q), IntPoly::new(r))
    }

    pub fn rem_monic(&self, d: &IntPoly) -> IntPoly {
        self.div_rem_monic(d).1
    }

    /// Exact division by a monic divisor, `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, d: &IntPoly) -> Option<IntPoly> {
        let (q, r) = self.div_rem_monic(d);
        r.is_zero().then_some(q)
    }

    /// Polynomial composition `self(g(x))`.
    pub fn compose(&self, g: &IntPoly) -> IntPoly {
        self.coeffs.iter().rev().fold(IntPoly::zero(), |acc, c| {
            &(&acc * g) + &IntPoly::constant(c.clone())
        })
    }

    /// `disc(f) = (-1)^{n(n-1)/2} res(f, f') / lc(f)`.
    pub fn discriminant(&self) -> BigInt {
        let n = self.degree().expect("discriminant of zero polynomial");
        let r = resultant(self, &self.derivative()) / self.leading();
        if (n * n.saturating_sub(1) / 2) % 2 == 1 {
            -r
        } else {
            r
        }
    }
}

/// Resultant via the Sylvester determinant.
pub fn resultant(a: &IntPoly, b: &IntPoly) -> BigInt {
    let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
        return BigInt::zero();
    };
    if m == 0 && n == 0 {
        return BigInt::one();
    }
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for i in 0..n {
        for (j, c) in a.coeffs.iter().rev().enumerate() {
            s[(i, i + j)] = c.clone();
        }
    }
    for i in 0..m {
        for (j, c) in b.coeffs.iter().rev().enumerate() {
            s[(n + i, i + j)] = c.clone();
        }
    }
    s.det()
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, o: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        IntPoly::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, o: &IntPoly) -> IntPoly {
        if self.is_zero() || o.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !a.is_one();
            if show_coeff {
                write!(f, "{a}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_discriminants() {
        assert_eq!(IntPoly::from_i64(&[5, 0, 1]).discriminant(), BigInt::from(-20));
        assert_eq!(IntPoly::from_i64(&[-2, 0, 1]).discriminant(), BigInt::from(8));
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).discriminant(), BigInt::from(5));
    }

    #[test]
    fn cubic_and_quartic_discriminants() {
        // x^3 - 2: -27 * 4 = -108
        assert_eq!(
            IntPoly::from_i64(&[-2, 0, 0, 1]).discriminant(),
            BigInt::from(-108)
        );
        // x^4 + 1: 256
        assert_eq!(
            IntPoly::from_i64(&[1, 0, 0, 0, 1]).discriminant(),
            BigInt::from(256)
        );
        assert_eq!(
            IntPoly::from_i64(&[1, 1, 1, 1, 1]).discriminant(),
            BigInt::from(125)
        );
    }

    #[test]
    fn division_by_monic() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 1]);
        let d = IntPoly::from_i64(&[-1, 1]);
        let q = f.div_exact_monic(&d).unwrap();
        assert_eq!(q, IntPoly::from_i64(&[1, 1, 1]));
        assert!(IntPoly::from_i64(&[1, 0, 1]).div_exact_monic(&d).is_none());
    }

    #[test]
    fn display() {
        assert_eq!(IntPoly::from_i64(&[5, 0, 1]).to_string(), "x^2 + 5");
        assert_eq!(IntPoly::from_i64(&[-1, -1, 1]).to_string(), "x^2 - x - 1");
        assert_eq!(IntPoly::from_i64(&[3, -2]).to_string(), "-2*x + 3");
    }

    #[test]
    fn composition() {
        let f = IntPoly::from_i64(&[5, 0, 1]);
        let g = IntPoly::from_i64(&[1, 1]);
        assert_eq!(f.compose(&g), IntPoly::from_i64(&[6, 2, 1]));
    }
}
