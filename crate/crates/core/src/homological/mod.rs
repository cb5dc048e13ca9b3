//! Ext over exterior algebras, presented algebras with a differential, and
//! page homology.

mod bockstein;
mod koszul;
mod lemma31;
mod page;
mod presented;

pub use bockstein::sq1_homology;
pub use koszul::{build_em_module, koszul_ext, EmReading, KoszulModule};
pub use lemma31::{verify_coproduct, verify_lemma31, CoproductTargets, IdentityCheck};
pub use page::{PageEntry, PageTable};
pub use presented::{
    algebra_basis, page_homology, presentation_dims, DifferentialSpec, PresentedAlgebra, QuotientSlice,
};
