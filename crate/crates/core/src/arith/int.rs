//! Rational integer helpers: primality, factorization, small sieves.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Miller-Rabin with the first thirteen prime bases is deterministic below
/// 3.3 * 10^24; above that it is a strong probable-prime test.
const MR_BASES: [u32; 13] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41];

const TRIAL_LIMIT: u32 = 10_000;

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut sieve = vec![true; n + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n {
        if sieve[i] {
            let mut j = i * i;
            while j <= n {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    sieve
        .iter()
        .enumerate()
        .filter_map(|(k, &b)| b.then_some(k as u64))
        .collect()
}

pub fn is_prime_u64(n: u64) -> bool {
    is_prime(&BigInt::from(n))
}

pub fn is_prime(n: &BigInt) -> bool {
    if n < &BigInt::from(2) {
        return false;
    }
    for &b in &MR_BASES {
        let b = BigInt::from(b);
        if n == &b {
            return true;
        }
        if (n % &b).is_zero() {
            return false;
        }
    }
    let one = BigInt::one();
    let n1 = n - &one;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    'outer: for &b in &MR_BASES {
        let mut x = BigInt::from(b).modpow(&d, n);
        if x == one || x == n1 {
            continue;
        }
        for _ in 1..s {
            x = (&x * &x) % n;
            if x == n1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Brent's variant of Pollard rho. Returns a nontrivial factor of an odd
/// composite `n`.
fn pollard_rho(n: &BigInt, rng: &mut ChaCha8Rng) -> BigInt {
    let one = BigInt::one();
    loop {
        let c = BigInt::from(rng.gen_range(1u64..1_000_000)) % n;
        let mut y = BigInt::from(rng.gen_range(2u64..1_000_000)) % n;
        let m = 64u32;
        let mut g = one.clone();
        let mut r = 1u64;
        let mut q = one.clone();
        let mut x = y.clone();
        let mut ys = y.clone();
        while g == one {
            x = y.clone();
            for _ in 0..r {
                y = (&y * &y + &c) % n;
            }
            let mut k = 0;
            while k < r && g == one {
                ys = y.clone();
                for _ in 0..m.min((r - k) as u32) {
                    y = (&y * &y + &c) % n;
                    q = (&q * (&x - &y).abs()) % n;
                }
                g = q.gcd(n);
                k += m as u64;
            }
            r *= 2;
        }
        if &g == n {
            loop {
                ys = (&ys * &ys + &c) % n;
                g = (&x - &ys).abs().gcd(n);
                if g > one {
                    break;
                }
            }
        }
        if &g != n {
            return g;
        }
    }
}

fn split_into(n: BigInt, out: &mut Vec<BigInt>, rng: &mut ChaCha8Rng) {
    if n.is_one() {
        return;
    }
    if is_prime(&n) {
        out.push(n);
        return;
    }
    let root = n.sqrt();
    if &root * &root == n {
        split_into(root.clone(), out, rng);
        split_into(root, out, rng);
        return;
    }
    let d = pollard_rho(&n, rng);
    let e = &n / &d;
    split_into(d, out, rng);
    split_into(e, out, rng);
}

/// Factor a positive integer into (prime, exponent) pairs, primes ascending.
///
/// `n = 1` gives the empty list. The sign of a negative input is ignored.
pub fn factor_int(n: &BigInt) -> Vec<(BigInt, u32)> {
    let mut n = n.abs();
    assert!(!n.is_zero(), "factor_int(0)");
    let mut out: Vec<(BigInt, u32)> = Vec::new();
    let mut p = 2u32;
    while p <= TRIAL_LIMIT {
        let bp = BigInt::from(p);
        if &bp * &bp > n {
            break;
        }
        let mut e = 0;
        while (&n % &bp).is_zero() {
            n /= &bp;
            e += 1;
        }
        if e > 0 {
            out.push((bp, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return out;
    }
    let mut rest = Vec::new();
    // seeded from n itself so the result is a pure function of the input
    let seed = n.to_u64_digits().1.first().copied().unwrap_or(0);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    split_into(n, &mut rest, &mut rng);
    rest.sort();
    for q in rest {
        match out.last_mut() {
            Some((last, e)) if *last == q => *e += 1,
            _ => out.push((q, 1)),
        }
    }
    out
}

/// Exponent of `p` in `n` (n != 0).
pub fn valuation(n: &BigInt, p: &BigInt) -> u32 {
    let mut n = n.clone();
    let mut v = 0;
    while !n.is_zero() && (&n % p).is_zero() {
        n /= p;
        v += 1;
    }
    v
}

/// Reduce into the balanced range (-m/2, m/2].
pub fn balanced_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}

pub fn is_squarefree(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    factor_int(&BigInt::from(n)).iter().all(|(_, e)| *e == 1)
}
