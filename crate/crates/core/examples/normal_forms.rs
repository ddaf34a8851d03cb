//! Hermite and Smith normal forms of an integer matrix.
//!
//!     cargo run --example normal_forms

use polya_lab::arith::matrix::IntMatrix;

fn main() {
    let a = IntMatrix::from_i64_rows(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
    println!("A = {:?}", a.columns());

    let h = a.hnf();
    println!("HNF H = A U, rank {}: {:?}", h.rank, h.h.columns());
    println!("det A = {}, U unimodular: {}", a.det(), h.u.is_unimodular());

    let s = a.snf();
    println!("SNF invariants: {:?}", s.invariants());
    assert_eq!(&(&s.u * &a) * &s.v, s.d);
}
