mod common;

const CASES: u32 = 256;

#[test]
fn action_is_a_representation() {
    common::prop_representation(CASES).unwrap();
}

#[test]
fn sq1_commutes_with_the_action() {
    common::prop_sq1_equivariant(CASES).unwrap();
}

#[test]
fn invariant_bases_are_fixed_by_random_elements() {
    common::prop_invariants_fixed(CASES).unwrap();
}
