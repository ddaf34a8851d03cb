use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::int::mod_inverse;
use super::poly::IntPoly;
use crate::error::{Error, Result};

/// Lift a simple root `r` of `f` modulo `p` to a root modulo `p^k`.
///
/// The result lies in `[0, p^k)` and is congruent to `r` modulo `p`.
pub fn hensel_root_lift(f: &IntPoly, p: &BigInt, r: &BigInt, k: u32) -> Result<BigInt> {
    let df = f.derivative();
    if !f.eval_mod(r, p).is_zero() {
        return Err(Error::InvalidEmbedding(format!("{r} is not a root mod {p}")));
    }
    if df.eval_mod(r, p).is_zero() {
        return Err(Error::SingularRoot { p: p.clone() });
    }
    let modulus = p.pow(k);
    let mut root = r.mod_floor(p);
    let mut prec = 1u32;
    while prec < k {
        prec = (2 * prec).min(k);
        let m = p.pow(prec);
        let inv = mod_inverse(&df.eval_mod(&root, &m), &m).ok_or(Error::SingularRoot { p: p.clone() })?;
        root = (&root - f.eval_mod(&root, &m) * inv).mod_floor(&m);
    }
    Ok(root.mod_floor(&modulus))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lift(c: &[i64], p: i64, r: i64, k: u32) -> Result<BigInt> {
        hensel_root_lift(&IntPoly::from_i64(c), &BigInt::from(p), &BigInt::from(r), k)
    }

    #[test]
    fn sqrt2_mod_49() {
        let r = lift(&[-2, 0, 1], 7, 3, 2).unwrap();
        assert_eq!(r, BigInt::from(10));
        assert_eq!((&r * &r) % 49, BigInt::from(2));
    }

    #[test]
    fn linear_polynomial() {
        for p in [3, 7, 11] {
            assert_eq!(lift(&[-5, 1], p, 5 % p, 3).unwrap(), BigInt::from(5));
        }
    }

    #[test]
    fn sqrt_minus_one_mod_25() {
        let r = lift(&[1, 0, 1], 5, 2, 2).unwrap();
        assert_eq!(r, BigInt::from(7));
        let sq: BigInt = &r * &r + 1;
        assert_eq!(sq % 25, BigInt::zero());
    }

    #[test]
    fn high_precision() {
        let r = lift(&[1, 0, 1], 5, 2, 40).unwrap();
        let m = BigInt::from(5).pow(40);
        let sq: BigInt = &r * &r + 1;
        assert!((sq % &m).is_zero());
        assert_eq!(&r % 5, BigInt::from(2));
    }

    #[test]
    fn singular_root_rejected() {
        assert!(matches!(
            lift(&[0, 0, 1], 5, 0, 2),
            Err(Error::SingularRoot { .. })
        ));
    }
}
