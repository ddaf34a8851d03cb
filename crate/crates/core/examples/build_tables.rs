//! Regenerate the shipped tables under `tables/`.
//!
//! Subfield embeddings are discovered with the library and written out, so
//! the table files can be reviewed and loaded without rediscovery.
//!
//!     cargo run --release --example build_tables

use std::fs;
use std::path::PathBuf;

use polya_lab::arith::int::{factor_int, is_squarefree};
use polya_lab::arith::poly::IntPoly;
use polya_lab::field::quadratic_poly;
use polya_lab::galois::find_embeddings;
use polya_lab::make_field;
use polya_lab::verify::table::{write_table, TableEntry};

const CURATED: &[(&str, &[i64])] = &[
    ("Q(zeta12)", &[1, 0, -1, 0, 1]),
    ("Q(zeta8)", &[1, 0, 0, 0, 1]),
    ("Q(i,sqrt(5))", &[1, 0, 3, 0, 1]),
    ("Q(sqrt(-2),sqrt(3))", &[1, 0, 4, 0, 1]),
    ("Q(sqrt(2),sqrt(3))", &[1, 0, -4, 0, 1]),
    ("Q(sqrt(3),sqrt(7))", &[1, 0, -5, 0, 1]),
    ("Q(zeta5)", &[1, 1, 1, 1, 1]),
    ("Q(zeta16)+", &[2, 0, -4, 0, 1]),
    ("Q(sqrt(-(2+sqrt(2))))", &[2, 0, 4, 0, 1]),
    ("Q(sqrt((5+sqrt(5))/2))", &[5, 0, -5, 0, 1]),
    ("Q(zeta15)+", &[1, 4, -4, -1, 1]),
    ("Q(zeta15)", &[1, -1, 0, 1, -1, 1, 0, -1, 1]),
    ("Q(zeta20)", &[1, 0, -1, 0, 1, 0, -1, 0, 1]),
];

fn main() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tables");
    fs::create_dir_all(&dir).unwrap();

    let mut quadratic = Vec::new();
    for d in -200i64..=200 {
        if d == 0 || d == 1 || !is_squarefree(d) {
            continue;
        }
        quadratic.push(TableEntry::over_q(&format!("Q(sqrt({d}))"), &quadratic_poly(d)));
    }
    fs::write(dir.join("quadratic.jsonl"), write_table(&quadratic)).unwrap();

    let mut towers = Vec::new();
    for &(name, coeffs) in CURATED {
        let top = make_field(&IntPoly::from_i64(coeffs)).unwrap();
        towers.push(TableEntry::over_q(&format!("{name}/Q"), top.poly()));
        // quadratic subfields: d built from -1 and primes dividing disc(L)
        let primes: Vec<i64> = factor_int(&top.disc().magnitude().clone().into())
            .into_iter()
            .map(|(p, _)| i64::try_from(&p).unwrap())
            .collect();
        let mut subfields: Vec<(String, IntPoly)> = Vec::new();
        for mask in 1u32..(1 << (primes.len() + 1)) {
            let mut d: i64 = if mask & 1 == 1 { -1 } else { 1 };
            for (i, p) in primes.iter().enumerate() {
                if mask & (1 << (i + 1)) != 0 {
                    d *= p;
                }
            }
            if d == 1 || !is_squarefree(d) {
                continue;
            }
            subfields.push((format!("Q(sqrt({d}))"), quadratic_poly(d)));
        }
        if top.degree() == 8 {
            for &(sub, c) in &CURATED[..11] {
                subfields.push((sub.to_string(), IntPoly::from_i64(c)));
            }
        }
        for (sub, poly) in subfields {
            if poly.degree().unwrap() >= top.degree() {
                continue;
            }
            let base = make_field(&poly).unwrap();
            if !top.degree().is_multiple_of(base.degree()) {
                continue;
            }
            if let Ok(embs) = find_embeddings(&base, &top) {
                towers.push(TableEntry::tower(&format!("{name}/{sub}"), &poly, &embs[0]));
            }
        }
    }
    fs::write(dir.join("towers.jsonl"), write_table(&towers)).unwrap();
    println!("{} quadratic fields, {} towers", quadratic.len(), towers.len());
    for t in &towers {
        println!("  {}", t.label);
    }
}
