pub mod cli;
pub mod error;
pub mod f2alg;
pub mod gf2la;
pub mod homological;
pub mod invariants;
pub mod series;
pub mod steenrod;

pub use error::{Error, Result};
