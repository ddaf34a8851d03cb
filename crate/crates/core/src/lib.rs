pub mod arith;
pub mod classgroup;
pub mod error;
pub mod field;
pub mod galois;
pub mod ideal;
pub mod polya;
pub mod units;
pub mod verify;

pub use error::{Error, Result};
pub use field::{make_field, Embedding, Field, FieldElement, NumberField};
pub use ideal::{Ideal, PrimeIdeal};
