//! LLL reduction of integer lattice bases (exact rational Gram-Schmidt).
//!
//! Only used to shorten ideal bases before small-element enumeration, so the
//! dimension is at most the field degree.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn gram_schmidt(b: &[Vec<BigInt>]) -> (Vec<Vec<BigRational>>, Vec<BigRational>) {
    let n = b.len();
    let mut mu = vec![vec![BigRational::zero(); n]; n];
    let mut bstar: Vec<Vec<BigRational>> = Vec::with_capacity(n);
    let mut norms = Vec::with_capacity(n);
    for i in 0..n {
        let mut v: Vec<BigRational> = b[i]
            .iter()
            .map(|x| BigRational::from_integer(x.clone()))
            .collect();
        for j in 0..i {
            let num: BigRational = b[i]
                .iter()
                .zip(&bstar[j])
                .map(|(x, y)| BigRational::from_integer(x.clone()) * y)
                .sum();
            mu[i][j] = num / &norms[j];
            for (vk, bk) in v.iter_mut().zip(&bstar[j]) {
                *vk = &*vk - &mu[i][j] * bk;
            }
        }
        let nrm: BigRational = v.iter().map(|x| x * x).sum();
        norms.push(nrm);
        bstar.push(v);
    }
    (mu, norms)
}

fn round(q: &BigRational) -> BigInt {
    let two = BigRational::from_integer(BigInt::from(2));
    (q + BigRational::one() / two).floor().to_integer()
}

/// LLL-reduce the given linearly independent vectors (delta = 3/4).
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let mut b = basis.to_vec();
    let n = b.len();
    if n <= 1 {
        return b;
    }
    let delta = BigRational::new(BigInt::from(3), BigInt::from(4));
    let mut k = 1;
    let mut guard = 0usize;
    while k < n {
        guard += 1;
        assert!(guard < 100_000, "LLL did not terminate");
        let (mu, _) = gram_schmidt(&b);
        for j in (0..k).rev() {
            let q = round(&mu[k][j]);
            if !q.is_zero() {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= &q * y;
                }
            }
        }
        let (mu, norms) = gram_schmidt(&b);
        let lhs = &norms[k];
        let rhs = (&delta - &mu[k][k - 1] * &mu[k][k - 1]) * &norms[k - 1];
        if lhs >= &rhs {
            k += 1;
        } else {
            b.swap(k, k - 1);
            k = (k - 1).max(1);
        }
    }
    // shortest first, ties by coordinates for determinism
    b.sort_by(|x, y| dot(x, x).cmp(&dot(y, y)).then_with(|| x.cmp(y)));
    for v in b.iter_mut() {
        if v.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
            for c in v.iter_mut() {
                *c = -&*c;
            }
        }
    }
    b
}
