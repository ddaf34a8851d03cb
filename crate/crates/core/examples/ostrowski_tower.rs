//! Relative Pólya groups and Ostrowski quotients for the quadratic subfields
//! of Q(sqrt(-2), sqrt(3)).
//!
//!     cargo run --release --example ostrowski_tower

use polya_lab::arith::poly::IntPoly;
use polya_lab::field::quadratic_poly;
use polya_lab::galois::{find_embeddings, GaloisGroup, Tower};
use polya_lab::make_field;
use polya_lab::polya::{compute_polya, ClassGroups};
use polya_lab::units::h1_via_brz;

fn main() {
    let l = make_field(&IntPoly::from_i64(&[1, 0, 4, 0, 1])).unwrap();
    let g = GaloisGroup::compute(&l).unwrap();
    let store = ClassGroups::new(0, None);
    for d in [-2, 3, -6] {
        let k = make_field(&quadratic_poly(d)).unwrap();
        let emb = find_embeddings(&k, &l).unwrap().remove(0);
        let tower = Tower::new(emb, g.clone()).unwrap();
        let data = compute_polya(&tower, &store, None).unwrap();
        let e = data.ramification_indices();
        let h1 = h1_via_brz(&data.kernel_order, &e, &data.ost_order()).unwrap();
        println!(
            "L/Q(sqrt({d})): e = {e:?}, ramified infinite places {}, ker eps = {}, Po = {}, Ost = {}, #H1 = {h1}",
            tower.ramified_infinite(),
            data.kernel_order,
            data.po.structure(),
            data.ost
        );
    }
}
