//! Class groups from relations over the Minkowski factor base, with the
//! reduced-forms count alongside for quadratic fields.
//!
//!     cargo run --release --example class_group

use polya_lab::arith::poly::IntPoly;
use polya_lab::classgroup::compute_class_group;
use polya_lab::field::quadratic_poly;
use polya_lab::make_field;

fn main() {
    let mut polys: Vec<(String, IntPoly)> = [-5, -23, -21, 10, 79, -199]
        .iter()
        .map(|&d| (format!("Q(sqrt({d}))"), quadratic_poly(d)))
        .collect();
    polys.push(("Q(i, sqrt(5))".into(), IntPoly::from_i64(&[1, 0, 3, 0, 1])));
    polys.push(("Q(sqrt(-2), sqrt(3))".into(), IntPoly::from_i64(&[1, 0, 4, 0, 1])));

    for (name, f) in polys {
        let k = make_field(&f).unwrap();
        let cl = compute_class_group(&k, 0).unwrap();
        let oracle = cl
            .oracle()
            .map(|h| format!(", forms give {h}"))
            .unwrap_or_default();
        println!(
            "{name:24} Cl = {:10} ({} primes, {} relations{oracle})",
            cl.structure().to_string(),
            cl.factor_base().len(),
            cl.relations().len()
        );
    }

    let k = make_field(&quadratic_poly(-5)).unwrap();
    let cl = compute_class_group(&k, 0).unwrap();
    let p2 = &cl.factor_base()[0];
    let sq = p2.ideal.pow(2);
    let gen = cl.is_principal(&sq).unwrap().expect("P2^2 is principal");
    let c: Vec<String> = gen.coords().iter().map(|x| x.to_string()).collect();
    println!(
        "P2^2 = ({}) in Q(sqrt(-5)), coordinates in 1, theta",
        c.join(", ")
    );
}
