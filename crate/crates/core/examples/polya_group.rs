//! Pólya groups of Galois fields over Q.
//!
//!     cargo run --release --example polya_group

use polya_lab::arith::poly::IntPoly;
use polya_lab::field::quadratic_poly;
use polya_lab::galois::{GaloisGroup, Tower};
use polya_lab::make_field;
use polya_lab::polya::{compute_polya, ClassGroups};

fn main() {
    let store = ClassGroups::new(0, None);
    let mut fields: Vec<(String, IntPoly)> = [-5, -23, -21, 3, 10, 79]
        .iter()
        .map(|&d| (format!("Q(sqrt({d}))"), quadratic_poly(d)))
        .collect();
    fields.push(("Q(i, sqrt(5))".into(), IntPoly::from_i64(&[1, 0, 3, 0, 1])));
    fields.push(("Q(zeta5)".into(), IntPoly::from_i64(&[1, 1, 1, 1, 1])));

    for (name, f) in fields {
        let k = make_field(&f).unwrap();
        let tower = Tower::over_rationals(GaloisGroup::compute(&k).unwrap());
        let data = compute_polya(&tower, &store, Some(100)).unwrap();
        println!(
            "{name:16} Cl = {:8} Po = {:8} ramified {:?}",
            format!("{:?}", data.cl_top),
            data.po.structure().to_string(),
            data.ramified.iter().map(|r| r.p.to_string()).collect::<Vec<_>>()
        );
    }
}
