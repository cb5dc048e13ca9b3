mod common;

const CASES: u32 = 256;

#[test]
fn ring_laws() {
    common::prop_ring_laws(CASES).unwrap();
}

#[test]
fn maps_are_ring_homomorphisms() {
    common::prop_homomorphism(CASES).unwrap();
}

#[test]
fn total_square_is_multiplicative() {
    common::prop_cartan(CASES).unwrap();
}

#[test]
fn graded_cartan_formula() {
    common::prop_cartan_graded(CASES).unwrap();
}

#[test]
fn sq1_squares_to_zero() {
    common::prop_sq1_sq1(CASES).unwrap();
}

#[test]
fn squares_are_unstable() {
    common::prop_unstable(CASES).unwrap();
}
