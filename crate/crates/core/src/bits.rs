//! Bit-packed vectors and matrices over GF(2).

use std::fmt;

use smallvec::SmallVec;

use crate::error::{Error, Result};

type Words = SmallVec<[u64; 4]>;

/// A fixed-length GF(2) vector packed into 64-bit words. Vectors of up to
/// 256 bits (every basis for n <= 12) stay inline.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2Vec {
    len: usize,
    words: Words,
}

impl Gf2Vec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: SmallVec::from_elem(0, len.div_ceil(64)),
        }
    }

    pub fn unit(len: usize, index: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(index, true);
        v
    }

    pub fn from_indices(len: usize, indices: impl IntoIterator<Item = usize>) -> Self {
        let mut v = Self::zeros(len);
        for i in indices {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % 64);
        if value {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn check_len(&self, other: &Self) -> Result<()> {
        if self.len != other.len {
            return Err(Error::DimensionMismatch {
                left: self.len,
                right: other.len,
            });
        }
        Ok(())
    }

    /// `self += other`. Panics on length mismatch.
    #[inline]
    pub fn xor_assign(&mut self, other: &Self) {
        assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn xor(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.xor_assign(other);
        out
    }

    /// The standard dot product `Σ self_i other_i` over GF(2).
    #[inline]
    pub fn dot(&self, other: &Self) -> bool {
        debug_assert_eq!(self.len, other.len);
        self.words
            .iter()
            .zip(&other.words)
            .fold(0u32, |acc, (a, b)| acc ^ (a & b).count_ones())
            & 1
            == 1
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn first_one(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    /// Indices of set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }

    /// Hexadecimal dump, most significant word first, `len.div_ceil(4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.len.div_ceil(4);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let mut nibble = 0u8;
            for b in 0..4 {
                let i = 4 * d + b;
                if i < self.len && self.get(i) {
                    nibble |= 1 << b;
                }
            }
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }
}

impl fmt::Debug for Gf2Vec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Vec[")?;
        for i in 0..self.len {
            write!(f, "{}", self.get(i) as u8)?;
        }
        write!(f, "]")
    }
}

/// A dense GF(2) matrix stored row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Matrix {
    cols: usize,
    rows: Vec<Gf2Vec>,
}

impl Gf2Matrix {
    pub fn new(cols: usize) -> Self {
        Self { cols, rows: Vec::new() }
    }

    pub fn from_rows(cols: usize, rows: Vec<Gf2Vec>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols));
        Self { cols, rows }
    }

    pub fn push_row(&mut self, row: Gf2Vec) {
        assert_eq!(row.len(), self.cols);
        self.rows.push(row);
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &Gf2Vec {
        &self.rows[i]
    }

    /// Row rank by Gaussian elimination on a copy.
    pub fn rank(&self) -> usize {
        Echelon::new(self).rank()
    }
}

/// Reduced row echelon form of a matrix, remembering for every pivot row
/// which combination of the original rows produced it.
#[derive(Clone, Debug)]
pub struct Echelon {
    nrows: usize,
    pivots: Vec<Pivot>,
}

#[derive(Clone, Debug)]
struct Pivot {
    col: usize,
    row: Gf2Vec,
    combination: Gf2Vec,
}

impl Echelon {
    pub fn new(m: &Gf2Matrix) -> Self {
        let nrows = m.nrows();
        let mut pivots: Vec<Pivot> = Vec::new();
        for (i, row) in m.rows.iter().enumerate() {
            let mut row = row.clone();
            let mut combination = Gf2Vec::unit(nrows, i);
            for p in &pivots {
                if row.get(p.col) {
                    row.xor_assign(&p.row);
                    combination.xor_assign(&p.combination);
                }
            }
            let Some(col) = row.first_one() else {
                continue;
            };
            // keep earlier pivots reduced against the new one
            for p in pivots.iter_mut() {
                if p.row.get(col) {
                    p.row.xor_assign(&row);
                    p.combination.xor_assign(&combination);
                }
            }
            pivots.push(Pivot { col, row, combination });
        }
        Self { nrows, pivots }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Coefficients `c` (one per original row) with `Σ c_i row_i = v`.
    pub fn solve(&self, v: &Gf2Vec) -> Result<Gf2Vec> {
        let mut residual = v.clone();
        let mut coeffs = Gf2Vec::zeros(self.nrows);
        for p in &self.pivots {
            if residual.get(p.col) {
                residual.xor_assign(&p.row);
                coeffs.xor_assign(&p.combination);
            }
        }
        if residual.is_zero() {
            Ok(coeffs)
        } else {
            Err(Error::NotInSpan)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vector_basics() {
        let mut v = Gf2Vec::zeros(130);
        v.set(0, true);
        v.set(129, true);
        v.flip(64);
        assert_eq!(v.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(v.count_ones(), 3);
        assert_eq!(v.first_one(), Some(0));
        let w = Gf2Vec::from_indices(130, [64, 5]);
        assert!(v.dot(&w));
        assert_eq!(v.xor(&w).ones().collect::<Vec<_>>(), vec![0, 5, 129]);
        assert!(Gf2Vec::zeros(3).is_zero());
    }

    #[test]
    fn hex_dump() {
        let v = Gf2Vec::from_indices(9, [0, 4, 8]);
        assert_eq!(v.to_hex(), "111");
        assert_eq!(Gf2Vec::from_indices(5, [1, 3]).to_hex(), "0a");
    }

    #[test]
    fn rank_and_solve() {
        let rows = vec![
            Gf2Vec::from_indices(4, [0, 1]),
            Gf2Vec::from_indices(4, [1, 2]),
            Gf2Vec::from_indices(4, [0, 2]),
            Gf2Vec::from_indices(4, [3]),
        ];
        let m = Gf2Matrix::from_rows(4, rows);
        assert_eq!(m.rank(), 3);
        let e = Echelon::new(&m);
        let c = e.solve(&Gf2Vec::from_indices(4, [1, 2, 3])).unwrap();
        let mut sum = Gf2Vec::zeros(4);
        for i in c.ones() {
            sum.xor_assign(m.row(i));
        }
        assert_eq!(sum, Gf2Vec::from_indices(4, [1, 2, 3]));
        assert!(e.solve(&Gf2Vec::from_indices(4, [0, 3])).is_err());
        assert_eq!(
            Echelon::new(&Gf2Matrix::from_rows(4, vec![Gf2Vec::unit(4, 0)]))
                .solve(&Gf2Vec::unit(4, 1)),
            Err(Error::NotInSpan)
        );
    }
}
