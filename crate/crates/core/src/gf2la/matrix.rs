use std::fmt;

use super::bitvec::{iter_ones, words_for, xor_words, BitVec};
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Dense matrix over F2, packed row-major into 64-bit words.
///
/// Padding bits past `cols` in every row are kept at zero; all mutating
/// methods preserve this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = words_for(cols);
        BitMatrix {
            rows,
            cols,
            stride,
            data: vec![0; rows * stride],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    /// Stacks the given vectors as rows. All vectors must have length `cols`.
    pub fn from_rows(cols: usize, rows: &[BitVec]) -> Self {
        let mut m = Self::zeros(0, cols);
        for r in rows {
            m.push_row(r);
        }
        m
    }

    /// Parses a grid of '0'/'1' characters, one row per line. Blank lines and
    /// lines starting with '#' are ignored.
    pub fn from_text(text: &str) -> Result<Self> {
        let lines: Vec<&str> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .collect();
        let cols = lines.first().map_or(0, |l| l.len());
        let mut m = Self::zeros(lines.len(), cols);
        for (i, line) in lines.iter().enumerate() {
            if line.len() != cols {
                return Err(Error::Parse(format!(
                    "row {i} has {} entries, expected {cols}",
                    line.len()
                )));
            }
            for (j, ch) in line.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(i, j, true),
                    other => return Err(Error::Parse(format!("unexpected character {other:?}"))),
                }
            }
        }
        Ok(m)
    }

    /// Debug dump as a '0'/'1' grid.
    pub fn to_text(&self) -> String {
        let mut s = String::with_capacity(self.rows * (self.cols + 1));
        for i in 0..self.rows {
            for j in 0..self.cols {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.rows && j < self.cols);
        self.data[i * self.stride + j / 64] >> (j % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: bool) {
        debug_assert!(i < self.rows && j < self.cols);
        let w = &mut self.data[i * self.stride + j / 64];
        let mask = 1u64 << (j % 64);
        if value {
            *w |= mask;
        } else {
            *w &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize, j: usize) {
        self.data[i * self.stride + j / 64] ^= 1u64 << (j % 64);
    }

    #[inline]
    pub fn row_words(&self, i: usize) -> &[u64] {
        &self.data[i * self.stride..(i + 1) * self.stride]
    }

    #[inline]
    pub fn row_words_mut(&mut self, i: usize) -> &mut [u64] {
        &mut self.data[i * self.stride..(i + 1) * self.stride]
    }

    pub fn row(&self, i: usize) -> BitVec {
        BitVec::from_words(self.cols, self.row_words(i).to_vec())
    }

    pub fn row_is_zero(&self, i: usize) -> bool {
        self.row_words(i).iter().all(|&w| w == 0)
    }

    pub fn row_ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        iter_ones(self.row_words(i))
    }

    pub fn push_row(&mut self, row: &BitVec) {
        assert_eq!(row.len(), self.cols, "row length mismatch");
        self.data.extend_from_slice(row.words());
        self.rows += 1;
    }

    pub fn truncate_rows(&mut self, rows: usize) {
        if rows < self.rows {
            self.rows = rows;
            self.data.truncate(rows * self.stride);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let s = self.stride;
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (first, second) = self.data.split_at_mut(hi * s);
        first[lo * s..(lo + 1) * s].swap_with_slice(&mut second[..s]);
    }

    /// row[dst] ^= row[src], touching only words from `from_word` on.
    #[inline]
    fn xor_row_into(&mut self, src: usize, dst: usize, from_word: usize) {
        let s = self.stride;
        if src < dst {
            let (a, b) = self.data.split_at_mut(dst * s);
            xor_words(&mut b[from_word..s], &a[src * s + from_word..(src + 1) * s]);
        } else {
            let (a, b) = self.data.split_at_mut(src * s);
            xor_words(&mut a[dst * s + from_word..(dst + 1) * s], &b[from_word..s]);
        }
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in self.row_ones(i) {
                t.set(j, i, true);
            }
        }
        t
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(self.cols, other.rows));
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        let s = out.stride;
        for i in 0..self.rows {
            let dst = &mut out.data[i * s..(i + 1) * s];
            for k in iter_ones(&self.data[i * self.stride..(i + 1) * self.stride]) {
                xor_words(dst, other.row_words(k));
            }
        }
        Ok(out)
    }

    /// Matrix-vector product `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &BitVec) -> Result<BitVec> {
        if self.cols != v.len() {
            return Err(Error::DimensionMismatch(self.cols, v.len()));
        }
        let mut out = BitVec::zeros(self.rows);
        for i in 0..self.rows {
            let parity = self
                .row_words(i)
                .iter()
                .zip(v.words())
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>();
            if parity % 2 == 1 {
                out.set(i, true);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(self.rows * self.cols, other.rows * other.cols));
        }
        let mut out = self.clone();
        xor_words(&mut out.data, &other.data);
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(self.cols, other.cols));
        }
        let mut out = self.clone();
        out.data.extend_from_slice(&other.data);
        out.rows += other.rows;
        Ok(out)
    }

    /// Horizontal concatenation.
    pub fn hstack(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(self.rows, other.rows));
        }
        let mut out = BitMatrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.row_words_mut(i)[..self.stride].copy_from_slice(self.row_words(i));
            for j in other.row_ones(i) {
                out.set(i, self.cols + j, true);
            }
        }
        Ok(out)
    }

    /// Index of the first column containing a nonzero entry.
    pub fn first_nonzero_column(&self) -> Option<usize> {
        (0..self.rows)
            .filter_map(|i| iter_ones(self.row_words(i)).next())
            .min()
    }

    /// In-place Gaussian elimination over the first `col_limit` columns.
    ///
    /// Pivot rows end up in order at the top. With `reduced`, entries above
    /// each pivot are cleared too. Returns the pivot columns.
    pub fn eliminate(&mut self, col_limit: usize, reduced: bool) -> Vec<usize> {
        let limit = col_limit.min(self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..limit {
            if r == self.rows {
                break;
            }
            let w = c / 64;
            let mask = 1u64 << (c % 64);
            let s = self.stride;
            let Some(p) = (r..self.rows).find(|&i| self.data[i * s + w] & mask != 0) else {
                continue;
            };
            self.swap_rows(r, p);
            let start = if reduced { 0 } else { r + 1 };
            for i in start..self.rows {
                if i != r && self.data[i * s + w] & mask != 0 {
                    self.xor_row_into(r, i, w);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    /// Reduced row-echelon form; zero rows are kept at the bottom.
    pub fn rref(&self) -> (usize, BitMatrix) {
        let mut m = self.clone();
        let rank = m.eliminate(m.cols, true).len();
        (rank, m)
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.eliminate(m.cols, false).len()
    }

    /// Basis of the right kernel `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let mut m = self.clone();
        let pivots = m.eliminate(m.cols, true);
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = BitVec::zeros(self.cols);
            v.set(free, true);
            for (r, &p) in pivots.iter().enumerate() {
                if m.get(r, free) {
                    v.set(p, true);
                }
            }
            basis.push(v);
        }
        Subspace::span(self.cols, &basis)
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        f.write_str(&self.to_text())
    }
}

/// Dimension of the homology `ker(g) / im(f)` of `A --f--> B --g--> C`.
///
/// `f` is `dim B x dim A`, `g` is `dim C x dim B`. Rejects the pair if
/// `g * f` is nonzero, reporting the first offending column.
pub fn homology_dim(f: &BitMatrix, g: &BitMatrix) -> Result<usize> {
    if f.rows() != g.cols() {
        return Err(Error::DimensionMismatch(f.rows(), g.cols()));
    }
    let gf = g.mul(f)?;
    if let Some(column) = gf.first_nonzero_column() {
        return Err(Error::NotAComplex { column });
    }
    let kernel_dim = g.cols() - g.rank();
    Ok(kernel_dim - f.rank())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(text: &str) -> BitMatrix {
        BitMatrix::from_text(text).unwrap()
    }

    #[test]
    fn rref_examples() {
        assert_eq!(BitMatrix::identity(5).rref().0, 5);
        assert_eq!(BitMatrix::zeros(3, 4).rref().0, 0);
        assert_eq!(m("11\n11").rref().0, 1);
        assert_eq!(m("11\n11").rref().1, m("11\n00"));
    }

    #[test]
    fn kernel_examples() {
        let k = m("11").kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&BitVec::from_bools(&[true, true])));
        assert_eq!(BitMatrix::identity(4).kernel().dim(), 0);
    }

    #[test]
    fn homology_examples() {
        let zero = BitMatrix::zeros(3, 3);
        assert_eq!(homology_dim(&zero, &zero).unwrap(), 3);
        // 0 -> F2 --id--> F2 -> 0 is exact in the middle
        let f = BitMatrix::identity(1);
        let g = BitMatrix::zeros(1, 1);
        assert_eq!(homology_dim(&f, &g).unwrap(), 0);
    }

    #[test]
    fn homology_rejects_non_complex() {
        let f = m("10\n01");
        let g = m("01");
        match homology_dim(&f, &g) {
            Err(Error::NotAComplex { column }) => assert_eq!(column, 1),
            other => panic!("expected NotAComplex, got {other:?}"),
        }
    }

    #[test]
    fn product_and_transpose() {
        let a = m("110\n011");
        let b = m("10\n01\n11");
        assert_eq!(a.mul(&b).unwrap(), m("11\n10"));
        assert_eq!(a.transpose(), m("10\n11\n01"));
        assert!(a.mul(&a).is_err());
    }

    #[test]
    fn wide_elimination_crosses_words() {
        let n = 150;
        let mut a = BitMatrix::identity(n);
        for i in 1..n {
            a.set(i, i - 1, true);
        }
        assert_eq!(a.rank(), n);
        let stacked = a.vstack(&a).unwrap();
        assert_eq!(stacked.rank(), n);
        assert_eq!(stacked.kernel().dim(), 0);
    }

    #[test]
    fn text_round_trip() {
        let a = m("101\n010");
        assert_eq!(BitMatrix::from_text(&a.to_text()).unwrap(), a);
        assert!(BitMatrix::from_text("10\n1").is_err());
    }
}
