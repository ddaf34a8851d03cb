//! Automorphisms of Q(zeta15), and decomposition and inertia groups.
//!
//!     cargo run --release --example galois_action

use num_bigint::BigInt;

use polya_lab::arith::poly::IntPoly;
use polya_lab::galois::GaloisGroup;
use polya_lab::ideal::decompose_prime;
use polya_lab::make_field;

fn main() {
    let k = make_field(&IntPoly::from_i64(&[1, -1, 0, 1, -1, 1, 0, -1, 1])).unwrap();
    let g = GaloisGroup::compute(&k).unwrap();
    let orders: Vec<usize> = (0..g.order()).map(|i| g.element_order(i)).collect();
    println!(
        "|G| = {}, abelian {}, cyclic {}",
        g.order(),
        g.is_abelian(&g.all()),
        g.is_cyclic(&g.all())
    );
    println!("element orders {orders:?}");

    for p in [2, 3, 5, 31] {
        let pr = decompose_prime(&k, &BigInt::from(p)).unwrap().remove(0);
        let d = g.decomposition_group(&pr).unwrap();
        let i = g.inertia_group(&pr).unwrap();
        println!(
            "p = {p:2}: e = {}, f = {}, |D| = {}, |I| = {}",
            pr.e,
            pr.f,
            d.len(),
            i.len()
        );
    }
}
