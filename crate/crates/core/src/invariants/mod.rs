//! Subgroups of `GL_n(2)` acting on `F2[x1..xn]`: closure, discovery of the
//! alternating subgroups of `GL_4(2)`, fixed spaces per degree, Dickson
//! invariants and named generator classes.
//!
//! A matrix `g` acts by `x_j -> sum_i g[i][j] x_i`, so that the action of
//! `gh` is the action of `g` after that of `h`.

mod action;
mod classes;
mod discover;
mod group;
mod matrix;

pub use action::{act, action_on_degree, invariant_basis, invariant_dims, is_fixed, substitution_map};
pub use classes::{dickson, extract_named_classes, perm_orbit_sum, restrict, NamedClassTable, Profile};
pub use discover::{
    discover_and_save, even_coordinate_permutations, find_alternating_subgroups,
    load_alternating_subgroups, load_verified, A6_FIXTURE, A7_FIXTURE, TRIALS_PER_SEED,
};
pub use group::{gl_order, permutation_generators, MatrixGroup};
pub use matrix::GF2Matrix;

pub(crate) use action::invariant_subspace;
