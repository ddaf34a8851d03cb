//! Run every theorem check over a few table entries and print the CSV summary.
//!
//!     cargo run --release --example verify_batch

use polya_lab::field::quadratic_poly;
use polya_lab::verify::{run_batch, BatchOptions, CheckId, TableEntry};

fn main() {
    let entries: Vec<TableEntry> = [-23, -5, -1, 2, 3, 10]
        .iter()
        .map(|&d| TableEntry::over_q(&format!("Q(sqrt({d}))"), &quadratic_poly(d)))
        .collect();
    let opts = BatchOptions {
        seed: 0,
        cache_dir: None,
        audit_bound: Some(60),
        table_name: "example".into(),
    };
    let report = run_batch(&entries, &CheckId::ALL, &opts);
    print!("{}", report.to_csv());
    let s = &report.summary;
    println!(
        "# {} pass, {} fail, {} not applicable",
        s.pass, s.fail, s.not_applicable
    );
}
