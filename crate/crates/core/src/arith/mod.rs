//! Exact integer, polynomial and matrix arithmetic.

pub mod fp;
pub mod hensel;
pub mod int;
pub mod json;
pub mod lll;
pub mod matrix;
pub mod poly;

pub use fp::{factor_poly_mod_p, roots_mod_p, FpPoly};
pub use hensel::hensel_root_lift;
pub use int::{factor_int, is_prime, primes_up_to};
pub use lll::lll_reduce;
pub use matrix::{HnfResult, IntMatrix, SnfResult};
pub use poly::{resultant, IntPoly};
