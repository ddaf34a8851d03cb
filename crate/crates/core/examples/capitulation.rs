//! Capitulation of Cl(Q(sqrt(-6))) in Q(sqrt(-2), sqrt(3)).
//!
//!     cargo run --release --example capitulation

use num_bigint::BigInt;

use polya_lab::arith::poly::IntPoly;
use polya_lab::field::quadratic_poly;
use polya_lab::galois::find_embeddings;
use polya_lab::ideal::decompose_prime;
use polya_lab::make_field;
use polya_lab::polya::{ClassGroups, ClassMap};

fn main() {
    let k = make_field(&quadratic_poly(-6)).unwrap();
    let l = make_field(&IntPoly::from_i64(&[1, 0, 4, 0, 1])).unwrap();
    let emb = find_embeddings(&k, &l).unwrap().remove(0);
    let store = ClassGroups::new(0, None);
    let (cl_k, cl_l) = (store.get(&k).unwrap(), store.get(&l).unwrap());
    println!("Cl(K) = {}, Cl(L) = {}", cl_k.structure(), cl_l.structure());

    let eps = ClassMap::extension(&emb, &cl_k, &cl_l).unwrap();
    println!("capitulation kernel has order {}", eps.kernel_order());

    let p2 = decompose_prime(&k, &BigInt::from(2)).unwrap().remove(0);
    let up = p2.ideal.extend(&emb).unwrap();
    println!(
        "P2 is principal in K: {}",
        cl_k.is_principal(&p2.ideal).unwrap().is_some()
    );
    match cl_l.is_principal(&up).unwrap() {
        Some(g) => {
            let c: Vec<String> = g.coords().iter().map(|x| x.to_string()).collect();
            println!("P2 O_L = ({}) in the power basis of L", c.join(", "))
        }
        None => println!("P2 O_L is not principal"),
    }
}
