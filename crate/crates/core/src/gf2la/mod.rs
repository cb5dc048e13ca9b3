//! Exact linear algebra over F2 on packed 64-bit words.
//!
//! Every degreewise question in the crate (fixed spaces, kernels of Sq^1,
//! quotient slices, page homology) ends up as row reduction here. Pivots
//! are always chosen as the first nonzero entry from the left, so results
//! are deterministic.

mod bitvec;
mod matrix;
mod subspace;

pub use bitvec::BitVec;
pub use matrix::{homology_dim, BitMatrix};
pub use subspace::Subspace;

pub(crate) use bitvec::{iter_ones, words_for};
