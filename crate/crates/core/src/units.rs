//! Units of quadratic fields and the orders of `Ĥ⁰(G, U_L)` and `H¹(G, U_L)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum UnitData {
    /// Fundamental unit `(t + u sqrt D)/2` and its coordinates in `Z[theta]`.
    Real {
        #[serde(with = "crate::arith::json::int")]
        t: BigInt,
        #[serde(with = "crate::arith::json::int")]
        u: BigInt,
        #[serde(with = "crate::arith::json::vec")]
        coords: Vec<BigInt>,
        norm: i8,
    },
    Imaginary {
        w: u32,
    },
}

impl UnitData {
    /// Does some unit have norm `-1`?
    pub fn has_norm_minus_one(&self) -> bool {
        matches!(self, UnitData::Real { norm: -1, .. })
    }
}

/// Least `(t, u)` with `t, u > 0` and `t^2 - D u^2 = ±4`, from the continued
/// fraction of `(δ + sqrt D)/2` where `δ = D mod 2`.
pub fn pell_minimal(d: &BigInt) -> (BigInt, BigInt) {
    assert!(d.is_positive());
    let four = BigInt::from(4);
    let delta = d.mod_floor(&BigInt::from(2));
    let root = d.sqrt();
    // alpha = (p + sqrt d)/q
    let (mut p, mut q) = (delta.clone(), BigInt::from(2));
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    loop {
        let a = (&p + &root).div_floor(&q);
        let h = &a * &h1 + &h0;
        let k = &a * &k1 + &k0;
        (h0, h1) = (h1, h.clone());
        (k0, k1) = (k1, k.clone());
        // h - k*omega' with omega' = (delta - sqrt d)/2
        let t = BigInt::from(2) * &h - &k * &delta;
        let u = k;
        if u.is_positive() && (&t * &t - d * &u * &u).abs() == four {
            return (t, u);
        }
        p = &a * &q - &p;
        q = (d - &p * &p) / &q;
    }
}

pub fn unit_data(field: &Field) -> Result<UnitData> {
    if field.degree() != 2 {
        return Err(Error::Unsupported("unit data only for quadratic fields".into()));
    }
    let d = field.disc().clone();
    if d.is_negative() {
        let w = if d == BigInt::from(-4) {
            4
        } else if d == BigInt::from(-3) {
            6
        } else {
            2
        };
        return Ok(UnitData::Imaginary { w });
    }
    let (t, u) = pell_minimal(&d);
    // theta = (-b + sqrt D)/2 for theta^2 + b theta + c
    let b = field.poly().coeff(1);
    let coords = vec![(&t + &u * &b) / 2, u.clone()];
    let norm = field.norm(&coords);
    let norm = if norm.is_one() { 1 } else { -1 };
    debug_assert_eq!(field.norm(&coords).abs(), BigInt::one());
    Ok(UnitData::Real { t, u, coords, norm })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    Direct,
    BrzDerived,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyOrders {
    /// `#Ĥ⁰(G, U_L)`, when known
    #[serde(with = "crate::arith::json::opt")]
    pub h0_hat: Option<BigInt>,
    #[serde(with = "crate::arith::json::int")]
    pub h1: BigInt,
    /// ramified infinite places
    pub s: u32,
    pub provenance: Provenance,
}

impl CohomologyOrders {
    /// `h0_hat / h1 = 2^s / n` for cyclic `G` of order `n`.
    pub fn herbrand_holds(&self, degree: usize) -> Option<bool> {
        let h0 = self.h0_hat.as_ref()?;
        Some(h0 * BigInt::from(degree) == &self.h1 * (BigInt::one() << self.s))
    }
}

/// Orders for a quadratic field over `Q` from its units.
pub fn h_orders_direct(field: &Field) -> Result<CohomologyOrders> {
    let units = unit_data(field)?;
    let (h0, s) = match units {
        UnitData::Imaginary { .. } => (2u32, 1u32),
        UnitData::Real { norm: -1, .. } => (1, 0),
        UnitData::Real { .. } => (2, 0),
    };
    // Herbrand quotient 2^s / 2
    let h1 = BigInt::from(h0 * 2) / (BigInt::one() << s);
    Ok(CohomologyOrders {
        h0_hat: Some(BigInt::from(h0)),
        h1,
        s,
        provenance: Provenance::Direct,
    })
}

/// `#H¹ = #ker ε · ∏ e / #Ost`, which must be an integer.
pub fn h1_via_brz(kernel_order: &BigInt, ramification: &[u32], ost_order: &BigInt) -> Result<BigInt> {
    let num: BigInt = kernel_order * ramification.iter().map(|&e| BigInt::from(e)).product::<BigInt>();
    let (q, r) = num.div_rem(ost_order);
    if !r.is_zero() {
        return Err(Error::NonIntegralOrder {
            numerator: num,
            denominator: ost_order.clone(),
        });
    }
    Ok(q)
}

/// BRZ-derived orders; `h0_hat` is recovered from the Herbrand identity when
/// `G` is cyclic and the quotient is integral.
pub fn h_orders_brz(h1: BigInt, degree: usize, s: u32, cyclic: bool) -> CohomologyOrders {
    let h0_hat = cyclic
        .then(|| {
            let num = &h1 * (BigInt::one() << s);
            let (q, r) = num.div_rem(&BigInt::from(degree));
            r.is_zero().then_some(q)
        })
        .flatten();
    CohomologyOrders {
        h0_hat,
        h1,
        s,
        provenance: Provenance::BrzDerived,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::IntPoly;
    use crate::field::{make_field, quadratic_poly};

    fn real(d: i64) -> (BigInt, BigInt, i8) {
        match unit_data(&make_field(&quadratic_poly(d)).unwrap()).unwrap() {
            UnitData::Real { t, u, norm, .. } => (t, u, norm),
            _ => panic!(),
        }
    }

    /// Least solution of `t^2 - D u^2 = ±4` by scanning `u`.
    fn brute(disc: i64) -> (i64, i64) {
        for u in 1i64.. {
            for s in [-4i64, 4] {
                let t2 = disc * u * u + s;
                let t = (t2 as f64).sqrt().round() as i64;
                if t > 0 && t * t == t2 {
                    return (t, u);
                }
            }
        }
        unreachable!()
    }

    #[test]
    fn small_fundamental_units() {
        // 1 + sqrt 2 = (2 + 1 sqrt 8)/2
        assert_eq!(real(2), (BigInt::from(2), BigInt::from(1), -1));
        assert_eq!(real(3), (BigInt::from(4), BigInt::from(1), 1));
        let k = make_field(&IntPoly::from_i64(&[-1, -1, 1])).unwrap();
        match unit_data(&k).unwrap() {
            UnitData::Real { coords, norm, .. } => {
                assert_eq!(norm, -1);
                assert_eq!(k.norm(&coords).abs(), BigInt::one());
                assert!(coords == vec![BigInt::zero(), BigInt::one()] || coords[1] == BigInt::one());
            }
            _ => panic!(),
        }
    }

    #[test]
    fn minimal_against_scan() {
        for d in 2i64..120 {
            if !crate::arith::int::is_squarefree(d) {
                continue;
            }
            let k = make_field(&quadratic_poly(d)).unwrap();
            let disc: i64 = k.disc().try_into().unwrap();
            let (t, u, _) = real(d);
            if u > BigInt::from(100_000) {
                continue;
            }
            let (bt, bu) = brute(disc);
            assert_eq!((t, u), (BigInt::from(bt), BigInt::from(bu)), "d = {d}");
        }
    }

    #[test]
    fn direct_orders() {
        let im = h_orders_direct(&make_field(&quadratic_poly(-5)).unwrap()).unwrap();
        assert_eq!(
            (im.h0_hat.clone().unwrap(), im.h1.clone(), im.s),
            (BigInt::from(2), BigInt::from(2), 1)
        );
        let r2 = h_orders_direct(&make_field(&quadratic_poly(2)).unwrap()).unwrap();
        assert_eq!(
            (r2.h0_hat.clone().unwrap(), r2.h1.clone()),
            (BigInt::from(1), BigInt::from(2))
        );
        let r3 = h_orders_direct(&make_field(&quadratic_poly(3)).unwrap()).unwrap();
        assert_eq!(
            (r3.h0_hat.clone().unwrap(), r3.h1.clone()),
            (BigInt::from(2), BigInt::from(4))
        );
        for o in [im, r2, r3] {
            assert_eq!(o.herbrand_holds(2), Some(true));
        }
    }

    #[test]
    fn brz_division() {
        assert_eq!(
            h1_via_brz(&BigInt::one(), &[], &BigInt::one()).unwrap(),
            BigInt::one()
        );
        assert_eq!(
            h1_via_brz(&BigInt::one(), &[2, 2], &BigInt::from(2)).unwrap(),
            BigInt::from(2)
        );
        assert!(matches!(
            h1_via_brz(&BigInt::one(), &[2], &BigInt::from(4)),
            Err(Error::NonIntegralOrder { .. })
        ));
        let o = h_orders_brz(BigInt::from(2), 2, 0, true);
        assert_eq!(o.h0_hat, Some(BigInt::one()));
    }
}
