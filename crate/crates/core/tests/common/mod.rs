//! Shared fixtures and property bodies for the integration tests.
#![allow(dead_code)]

use std::path::PathBuf;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngSeed, TestCaseError, TestRunner};

use polya_lab::arith::matrix::IntMatrix;
use polya_lab::arith::poly::IntPoly;
use polya_lab::galois::{GaloisGroup, Tower};
use polya_lab::ideal::{decompose_prime, ostrowski_ideal, relative_ostrowski_ideal, Ideal};
use polya_lab::verify::{load_table, TableEntry};
use polya_lab::{make_field, Field};

pub const CASES: u32 = 1000;
pub const SEED: u64 = 0x504f_4c59_4100_0001;

pub const SMALL_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

pub fn config() -> Config {
    Config {
        cases: CASES,
        failure_persistence: None,
        rng_seed: RngSeed::Fixed(SEED),
        ..Config::default()
    }
}

pub fn runner() -> TestRunner {
    TestRunner::new(config())
}

pub fn table(name: &str) -> Vec<TableEntry> {
    load_table(
        &PathBuf::from(env!("CARGO_MANIFEST_DIR"))
            .join("tables")
            .join(name),
    )
    .unwrap()
}

/// Galois fields over Q with their automorphism groups.
pub fn galois_fields() -> &'static [(Field, GaloisGroup)] {
    static CELL: OnceLock<Vec<(Field, GaloisGroup)>> = OnceLock::new();
    CELL.get_or_init(|| {
        let polys: [&[i64]; 7] = [
            &[5, 0, 1],
            &[-1, -1, 1],
            &[6, 0, 1],
            &[1, 0, 3, 0, 1],
            &[1, 0, -4, 0, 1],
            &[1, 1, 1, 1, 1],
            &[2, 0, -4, 0, 1],
        ];
        polys
            .iter()
            .map(|c| {
                let f = make_field(&IntPoly::from_i64(c)).unwrap();
                let g = GaloisGroup::compute(&f).unwrap();
                (f, g)
            })
            .collect()
    })
}

/// Galois fields plus a non-Galois cubic.
pub fn all_fields() -> &'static [Field] {
    static CELL: OnceLock<Vec<Field>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut v: Vec<Field> = galois_fields().iter().map(|(f, _)| f.clone()).collect();
        v.push(make_field(&IntPoly::from_i64(&[-2, 0, 0, 1])).unwrap());
        v
    })
}

/// Quartic relative towers from the shipped table.
pub fn quartic_towers() -> &'static [Tower] {
    static CELL: OnceLock<Vec<Tower>> = OnceLock::new();
    CELL.get_or_init(|| {
        table("towers.jsonl")
            .iter()
            .filter(|e| e.base.is_some() && e.top.len() == 5)
            .map(|e| e.build().unwrap())
            .collect()
    })
}

pub fn coords(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-12i64..=12, n..=n)
}

fn element(field: &Field, c: &[i64]) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = c[..field.degree()].iter().map(|&x| BigInt::from(x)).collect();
    if v.iter().all(Zero::is_zero) {
        v[0] = BigInt::from(1);
    }
    v
}

pub fn element_norm_multiplicative((i, a, b): (usize, Vec<i64>, Vec<i64>)) -> Result<(), TestCaseError> {
    let k = &all_fields()[i % all_fields().len()];
    let (a, b) = (element(k, &a), element(k, &b));
    prop_assert_eq!(k.norm(&k.mul(&a, &b)), k.norm(&a) * k.norm(&b));
    Ok(())
}

pub fn ideal_norm_multiplicative(
    (i, a, b, c): (usize, Vec<i64>, Vec<i64>, Vec<i64>),
) -> Result<(), TestCaseError> {
    let k = &all_fields()[i % all_fields().len()];
    let x = Ideal::from_generators(k, &[element(k, &a), element(k, &b)], None).unwrap();
    let y = Ideal::principal(k, &element(k, &c)).unwrap();
    let xy = x.mul(&y).unwrap();
    prop_assert_eq!(xy.norm(), &(x.norm() * y.norm()));
    prop_assert_eq!(y.norm(), &k.norm(&element(k, &c)).abs());
    Ok(())
}

pub fn ostrowski_g_stable((i, p, f): (usize, usize, u32)) -> Result<(), TestCaseError> {
    let (k, g) = &galois_fields()[i % galois_fields().len()];
    let p = BigInt::from(SMALL_PRIMES[p % SMALL_PRIMES.len()]);
    let f = 1 + f % k.degree() as u32;
    let pi = ostrowski_ideal(k, &p, f).unwrap();
    for s in g.elements() {
        prop_assert_eq!(&s.apply_to_ideal(&pi).unwrap(), &pi);
    }
    Ok(())
}

/// `Pi_{p^f}^e = p O_L` over Q, and `Pi_{P^f}(L/K)^e = P O_L` over a base.
pub fn ostrowski_power_identity((i, p, t): (usize, usize, usize)) -> Result<(), TestCaseError> {
    let (k, _) = &galois_fields()[i % galois_fields().len()];
    let p = BigInt::from(SMALL_PRIMES[p % SMALL_PRIMES.len()]);
    let primes = decompose_prime(k, &p).unwrap();
    let (e, f) = (primes[0].e, primes[0].f);
    prop_assert_eq!(ostrowski_ideal(k, &p, f).unwrap().pow(e), Ideal::from_int(k, &p));

    let towers = quartic_towers();
    let tower = &towers[t % towers.len()];
    let small = decompose_prime(tower.base(), &p).unwrap().swap_remove(0);
    let split = tower.splitting(&small).unwrap();
    let pi = relative_ostrowski_ideal(tower.embedding(), &small, split.f).unwrap();
    prop_assert_eq!(pi.pow(split.e), small.ideal.extend(tower.embedding()).unwrap());
    Ok(())
}

pub fn matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=5, 1usize..=5).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-30i64..=30, c..=c), r..=r).prop_map(|rows| {
            IntMatrix::from_rows(
                &rows
                    .iter()
                    .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                    .collect::<Vec<_>>(),
            )
        })
    })
}

pub fn snf_divisibility(a: IntMatrix) -> Result<(), TestCaseError> {
    let r = a.snf();
    let d = r.invariants();
    for w in d.windows(2) {
        prop_assert!(
            w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()),
            "chain {:?}",
            d
        );
    }
    prop_assert_eq!(&(&r.u * &a) * &r.v, r.d);
    Ok(())
}

pub fn transforms_unimodular(a: IntMatrix) -> Result<(), TestCaseError> {
    let s = a.snf();
    prop_assert!(s.u.is_unimodular() && s.v.is_unimodular());
    let h = a.hnf();
    prop_assert!(h.u.is_unimodular());
    prop_assert_eq!(&a * &h.u, h.h);
    Ok(())
}

pub fn field_index() -> impl Strategy<Value = usize> {
    0usize..64
}

/// Each property run through a fixed-seed runner; `(name, outcome)`.
pub fn run_property_suite() -> Vec<(&'static str, Result<(), String>)> {
    let mut out = Vec::new();
    let mut record = |name, r: Result<(), String>| out.push((name, r));
    record(
        "element norm multiplicativity",
        runner()
            .run(
                &(field_index(), coords(4), coords(4)),
                element_norm_multiplicative,
            )
            .map_err(|e| e.to_string()),
    );
    record(
        "ideal norm multiplicativity",
        runner()
            .run(
                &(field_index(), coords(4), coords(4), coords(4)),
                ideal_norm_multiplicative,
            )
            .map_err(|e| e.to_string()),
    );
    record(
        "Ostrowski ideals G-stable",
        runner()
            .run(&(field_index(), 0usize..64, 0u32..8), ostrowski_g_stable)
            .map_err(|e| e.to_string()),
    );
    record(
        "Ostrowski power identity",
        runner()
            .run(&(field_index(), 0usize..64, 0usize..64), ostrowski_power_identity)
            .map_err(|e| e.to_string()),
    );
    record(
        "SNF divisibility chain",
        runner()
            .run(&matrix(), snf_divisibility)
            .map_err(|e| e.to_string()),
    );
    record(
        "unimodular transforms",
        runner()
            .run(&matrix(), transforms_unimodular)
            .map_err(|e| e.to_string()),
    );
    out
}
