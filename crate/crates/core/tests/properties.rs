mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(config())]

    #[test]
    fn element_norms(x in (field_index(), coords(4), coords(4))) {
        element_norm_multiplicative(x)?;
    }

    #[test]
    fn ideal_norms(x in (field_index(), coords(4), coords(4), coords(4))) {
        ideal_norm_multiplicative(x)?;
    }

    #[test]
    fn ostrowski_stable(x in (field_index(), 0usize..64, 0u32..8)) {
        ostrowski_g_stable(x)?;
    }

    #[test]
    fn ostrowski_power(x in (field_index(), 0usize..64, 0usize..64)) {
        ostrowski_power_identity(x)?;
    }

    #[test]
    fn snf_chain(a in matrix()) {
        snf_divisibility(a)?;
    }

    #[test]
    fn unimodular(a in matrix()) {
        transforms_unimodular(a)?;
    }
}
