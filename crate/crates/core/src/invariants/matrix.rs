use std::fmt;

use crate::error::{Error, Result};

/// An `n x n` matrix over F2 with `n <= 8`, packed one byte per row.
///
/// Row `i` lives in bits `8i..8i+8`; column `j` is bit `j` of its row byte.
/// The derived order (dimension, then packed bits) is the canonical element
/// order used when enumerating groups.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GF2Matrix {
    n: u8,
    bits: u64,
}

impl GF2Matrix {
    pub const MAX_DIM: usize = 8;

    /// Builds a matrix from row bit patterns (bit `j` of `rows[i]` is entry `(i, j)`).
    pub fn from_row_bytes(n: usize, rows: &[u8]) -> Result<Self> {
        if n > Self::MAX_DIM {
            return Err(Error::MatrixTooLarge(n));
        }
        if rows.len() != n {
            return Err(Error::DimensionMismatch(rows.len(), n));
        }
        let mask = if n == 8 { 0xff } else { (1u8 << n) - 1 };
        let mut bits = 0u64;
        for (i, &r) in rows.iter().enumerate() {
            if r & !mask != 0 {
                return Err(Error::DimensionMismatch(8 - r.leading_zeros() as usize, n));
            }
            bits |= (r as u64) << (8 * i);
        }
        Ok(GF2Matrix { n: n as u8, bits })
    }

    pub fn from_entries(entries: &[Vec<bool>]) -> Result<Self> {
        let n = entries.len();
        let mut rows = Vec::with_capacity(n);
        for row in entries {
            if row.len() != n {
                return Err(Error::DimensionMismatch(row.len(), n));
            }
            rows.push(
                row.iter()
                    .enumerate()
                    .fold(0u8, |acc, (j, &b)| acc | ((b as u8) << j)),
            );
        }
        Self::from_row_bytes(n, &rows)
    }

    pub fn identity(n: usize) -> Self {
        let rows: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
        Self::from_row_bytes(n, &rows).expect("n <= 8")
    }

    /// The permutation matrix sending `x_j` to `x_{perm[j]}`: entry
    /// `(perm[j], j)` is 1.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut rows = vec![0u8; n];
        let mut seen = vec![false; n];
        for (j, &p) in perm.iter().enumerate() {
            if p >= n || seen[p] {
                return Err(Error::InvalidSpec(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
            rows[p] |= 1 << j;
        }
        Self::from_row_bytes(n, &rows)
    }

    /// Identity plus the elementary matrix `E_{row,col}` (`row != col`).
    pub fn transvection(n: usize, row: usize, col: usize) -> Result<Self> {
        if row == col || row >= n || col >= n {
            return Err(Error::InvalidSpec(format!("bad transvection ({row},{col}) in dim {n}")));
        }
        let mut m = Self::identity(n);
        m.bits |= 1u64 << (8 * row + col);
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.n as usize
    }

    #[inline]
    pub fn row(&self, i: usize) -> u8 {
        (self.bits >> (8 * i)) as u8
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        self.row(i) >> j & 1 == 1
    }

    #[inline]
    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        debug_assert_eq!(self.n, other.n);
        let mut bits = 0u64;
        for i in 0..self.n as usize {
            let mut r = self.row(i);
            let mut acc = 0u8;
            while r != 0 {
                let k = r.trailing_zeros() as usize;
                acc ^= other.row(k);
                r &= r - 1;
            }
            bits |= (acc as u64) << (8 * i);
        }
        GF2Matrix { n: self.n, bits }
    }

    pub fn transpose(&self) -> GF2Matrix {
        let n = self.dim();
        let mut rows = vec![0u8; n];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..n {
                if self.get(j, i) {
                    *row |= 1 << j;
                }
            }
        }
        Self::from_row_bytes(n, &rows).expect("same dimension")
    }

    pub fn rank(&self) -> usize {
        let mut rows: Vec<u8> = (0..self.dim()).map(|i| self.row(i)).collect();
        let mut rank = 0;
        for c in 0..self.dim() {
            if let Some(p) = (rank..rows.len()).find(|&i| rows[i] >> c & 1 == 1) {
                rows.swap(rank, p);
                for i in 0..rows.len() {
                    if i != rank && rows[i] >> c & 1 == 1 {
                        rows[i] ^= rows[rank];
                    }
                }
                rank += 1;
            }
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn inverse(&self) -> Result<GF2Matrix> {
        let n = self.dim();
        let mut a: Vec<u8> = (0..n).map(|i| self.row(i)).collect();
        let mut inv: Vec<u8> = (0..n).map(|i| 1u8 << i).collect();
        for c in 0..n {
            let p = (c..n).find(|&i| a[i] >> c & 1 == 1).ok_or(Error::NotInvertible)?;
            a.swap(c, p);
            inv.swap(c, p);
            for i in 0..n {
                if i != c && a[i] >> c & 1 == 1 {
                    a[i] ^= a[c];
                    inv[i] ^= inv[c];
                }
            }
        }
        Self::from_row_bytes(n, &inv)
    }

    /// If this is a permutation matrix, the permutation `j -> perm[j]` with
    /// entry `(perm[j], j)` set.
    pub fn as_permutation(&self) -> Option<Vec<usize>> {
        let n = self.dim();
        let mut perm = vec![usize::MAX; n];
        for i in 0..n {
            let r = self.row(i);
            if r.count_ones() != 1 {
                return None;
            }
            let j = r.trailing_zeros() as usize;
            if perm[j] != usize::MAX {
                return None;
            }
            perm[j] = i;
        }
        Some(perm)
    }

    /// Image of the linear form with coefficient vector `v` (bit `i` for
    /// `x_i`) under `x_j -> sum_i g[i][j] x_i`.
    pub fn apply_to_form(&self, v: u8) -> u8 {
        let mut out = 0u8;
        let mut r = v;
        while r != 0 {
            let j = r.trailing_zeros() as usize;
            out ^= self.column(j);
            r &= r - 1;
        }
        out
    }

    /// Column `j` as a bit pattern over rows.
    pub fn column(&self, j: usize) -> u8 {
        (0..self.dim()).fold(0u8, |acc, i| acc | ((self.get(i, j) as u8) << i))
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                s.push(if self.get(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.dim())
            .map(|i| (0..self.dim()).map(|j| if self.get(i, j) { '1' } else { '0' }).collect())
            .collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_inverse() {
        let t = GF2Matrix::transvection(3, 0, 1).unwrap();
        assert_eq!(t.mul(&t), GF2Matrix::identity(3));
        assert_eq!(t.inverse().unwrap(), t);
        let p = GF2Matrix::permutation(&[1, 2, 0]).unwrap();
        let pinv = p.inverse().unwrap();
        assert_eq!(p.mul(&pinv), GF2Matrix::identity(3));
        assert_eq!(p.as_permutation().unwrap(), vec![1, 2, 0]);
        assert!(t.as_permutation().is_none());
    }

    #[test]
    fn singular_matrix() {
        let m = GF2Matrix::from_row_bytes(2, &[0b11, 0b11]).unwrap();
        assert!(!m.is_invertible());
        assert!(matches!(m.inverse(), Err(Error::NotInvertible)));
    }

    #[test]
    fn rejects_oversized() {
        assert!(GF2Matrix::from_row_bytes(9, &[0; 9]).is_err());
        assert!(GF2Matrix::from_row_bytes(2, &[0b100, 0]).is_err());
    }
}
