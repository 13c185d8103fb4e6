mod common;

use common::*;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn field_axioms_hold(x in eisenstein(), y in eisenstein(), z in eisenstein()) {
        field_axioms((x, y, z))?;
    }

    #[test]
    fn norm_is_multiplicative(x in eisenstein(), y in eisenstein()) {
        norm_multiplicative((x, y))?;
    }

    #[test]
    fn smith_form_postconditions(m in matrix()) {
        smith_postconditions(m)?;
    }

    #[test]
    fn index_is_multiplicative(chain in lattice_chain()) {
        index_multiplicative(chain)?;
    }

    #[test]
    fn blow_up_changes_invariants_by_the_expected_deltas(model in random_model()) {
        blow_up_deltas(model)?;
    }
}
