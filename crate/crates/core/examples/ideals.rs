//! Prime decomposition, ideal products and Ostrowski ideals in Q(sqrt(-5)).
//!
//!     cargo run --example ideals

use num_bigint::BigInt;

use polya_lab::field::quadratic_poly;
use polya_lab::ideal::{decompose_prime, factor_ideal, ostrowski_ideal, Ideal};
use polya_lab::make_field;

fn main() {
    let k = make_field(&quadratic_poly(-5)).unwrap();
    println!("Q(sqrt(-5)): disc {}, poly {}", k.disc(), k.poly());

    for p in [2, 3, 5, 7, 11] {
        let p = BigInt::from(p);
        let primes = decompose_prime(&k, &p).unwrap();
        let shape: Vec<String> = primes.iter().map(|q| format!("(e={}, f={})", q.e, q.f)).collect();
        println!("  {p}: {}", shape.join(" "));
    }

    let p2 = decompose_prime(&k, &BigInt::from(2)).unwrap().remove(0);
    let p3 = decompose_prime(&k, &BigInt::from(3)).unwrap().remove(0);
    let prod = p2.ideal.mul(&p3.ideal).unwrap();
    println!("norm of P2 * P3 = {}", prod.norm());
    let fac = factor_ideal(&Ideal::from_int(&k, &BigInt::from(6))).unwrap();
    println!(
        "(6) has {} prime factors with multiplicity",
        fac.iter().map(|(_, e)| e).sum::<u32>()
    );

    let pi = ostrowski_ideal(&k, &BigInt::from(3), 1).unwrap();
    println!(
        "Pi_3 has norm {} and equals (3): {}",
        pi.norm(),
        pi == Ideal::from_int(&k, &BigInt::from(3))
    );
}
