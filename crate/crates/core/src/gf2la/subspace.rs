use super::bitvec::BitVec;
use super::matrix::BitMatrix;
use crate::error::{Error, Result};

/// A linear subspace of F2^n held as a reduced row-echelon basis.
///
/// The basis has no zero rows and its pivot columns strictly increase.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    basis: BitMatrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            basis: BitMatrix::zeros(0, ambient),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            basis: BitMatrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row span of a matrix.
    pub fn row_span(m: &BitMatrix) -> Self {
        let mut basis = m.clone();
        let pivots = basis.eliminate(basis.cols(), true);
        basis.truncate_rows(pivots.len());
        Subspace { basis, pivots }
    }

    /// Span of a list of vectors of length `ambient`.
    pub fn span(ambient: usize, vectors: &[BitVec]) -> Self {
        Self::row_span(&BitMatrix::from_rows(ambient, vectors))
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &BitMatrix {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn vectors(&self) -> impl Iterator<Item = BitVec> + '_ {
        (0..self.dim()).map(|i| self.basis.row(i))
    }

    /// Remainder of `v` after clearing every pivot column.
    pub fn reduce(&self, v: &BitVec) -> BitVec {
        let mut r = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r.get(p) {
                r.xor_assign(&self.basis.row(i));
            }
        }
        r
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        v.len() == self.ambient() && self.reduce(v).is_zero()
    }

    /// Coordinates of `v` in the echelon basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &BitVec) -> Option<BitVec> {
        if v.len() != self.ambient() {
            return None;
        }
        let mut coords = BitVec::zeros(self.dim());
        let mut r = v.clone();
        for (i, &p) in self.pivots.iter().enumerate() {
            if r.get(p) {
                coords.set(i, true);
                r.xor_assign(&self.basis.row(i));
            }
        }
        r.is_zero().then_some(coords)
    }

    /// Linear combination of basis rows with the given coordinates.
    pub fn combine(&self, coords: &BitVec) -> BitVec {
        let mut v = BitVec::zeros(self.ambient());
        for i in coords.ones() {
            v.xor_assign(&self.basis.row(i));
        }
        v
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.vectors().all(|v| other.contains(&v))
    }

    /// Row span of the concatenated bases.
    pub fn join(&self, other: &Subspace) -> Result<Subspace> {
        if self.ambient() != other.ambient() {
            return Err(Error::DimensionMismatch(self.ambient(), other.ambient()));
        }
        Ok(Self::row_span(&self.basis.vstack(&other.basis)?))
    }

    /// Intersection by the Zassenhaus construction: reduce `[[A, A], [B, 0]]`
    /// and keep the right halves of rows whose left half vanished.
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        let n = self.ambient();
        if n != other.ambient() {
            return Err(Error::DimensionMismatch(n, other.ambient()));
        }
        let top = self.basis.hstack(&self.basis)?;
        let bottom = other.basis.hstack(&BitMatrix::zeros(other.dim(), n))?;
        let mut z = top.vstack(&bottom)?;
        let pivots = z.eliminate(2 * n, false);
        let mut rows = Vec::new();
        for (i, &p) in pivots.iter().enumerate() {
            if p >= n {
                let full = z.row(i);
                let mut v = BitVec::zeros(n);
                for j in full.ones().filter(|&j| j >= n) {
                    v.set(j - n, true);
                }
                rows.push(v);
            }
        }
        Ok(Self::span(n, &rows))
    }
}
