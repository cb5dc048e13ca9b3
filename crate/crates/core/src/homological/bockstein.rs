use crate::error::Result;
use crate::f2alg::{AlgebraSpec, DegreeBasis};
use crate::invariants::{invariant_subspace, MatrixGroup};
use crate::series::DimTable;
use crate::steenrod::sq1_linear_map;

/// `dim ker Sq^1 / im Sq^1` on the invariant ring of `group` in each degree
/// `0..=n_max`.
///
/// `Sq^1` commutes with the action, so it maps invariants to invariants;
/// ranks are computed on the invariant subspaces in monomial coordinates.
pub fn sq1_homology(group: &MatrixGroup, n_max: u32) -> Result<DimTable> {
    let alg = AlgebraSpec::polynomial(group.dim());
    let bases: Vec<DegreeBasis> = (0..=n_max + 1).map(|d| DegreeBasis::new(&alg, d)).collect();
    let spaces: Vec<_> = bases[..=n_max as usize]
        .iter()
        .map(|b| invariant_subspace(group, b))
        .collect();
    // rank of Sq^1 leaving degree d
    let ranks: Vec<usize> = (0..=n_max as usize)
        .map(|d| sq1_linear_map(&spaces[d], &bases[d], &bases[d + 1]).map(|m| m.rank()))
        .collect::<Result<_>>()?;
    let dims = (0..=n_max as usize)
        .map(|d| {
            let incoming = if d == 0 { 0 } else { ranks[d - 1] };
            (spaces[d].dim() - ranks[d] - incoming) as u64
        })
        .collect();
    Ok(DimTable::new("sq1-homology", 0, dims))
}
