//! Graded-commutative algebras over F2 with polynomial and square-zero
//! generators.
//!
//! Coefficients are implicit: an [`Element`] is a set of monomials, and
//! addition is symmetric difference. Terms are kept in descending
//! graded-lex order with the declared generator order as tie-break, so the
//! rendering `x1^2*x2 + x3^3` is canonical and parses back to the same
//! element.

mod basis;
mod element;
mod map;
mod parse;
mod spec;

pub use basis::DegreeBasis;
pub use element::Element;
pub use map::AlgebraMap;
pub use spec::{monomial_basis, AlgebraSpec, Exponents, GenKind, GeneratorSpec, Monomial};
