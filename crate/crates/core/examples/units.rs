//! Fundamental units from continued fractions and the unit cohomology orders
//! of quadratic fields.
//!
//!     cargo run --example units

use polya_lab::field::quadratic_poly;
use polya_lab::make_field;
use polya_lab::units::{h_orders_direct, unit_data};

fn main() {
    for d in [2, 3, 5, 10, 34, 79, 94, -1, -3, -5] {
        let k = make_field(&quadratic_poly(d)).unwrap();
        let units = unit_data(&k).unwrap();
        let h = h_orders_direct(&k).unwrap();
        println!(
            "d = {d:3}: {} | h0_hat = {}, h1 = {}, s = {}, Herbrand {:?}",
            serde_json::to_string(&units).unwrap(),
            h.h0_hat.as_ref().map(|x| x.to_string()).unwrap_or_default(),
            h.h1,
            h.s,
            h.herbrand_holds(2)
        );
    }
}
