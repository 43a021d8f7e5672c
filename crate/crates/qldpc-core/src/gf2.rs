//! Bit-packed GF(2) vectors and matrices.
//!
//! Rows are packed 64 bits per word so that row additions, rank computation,
//! and rowspan membership queries run word-parallel. This is the workhorse
//! behind syndrome checks and the stabilizer membership oracle, both of which
//! sit on the per-trial hot path of the Monte Carlo harness.

use alloc::vec;
use alloc::vec::Vec;

/// A fixed-length bit vector over GF(2), packed little-endian into `u64`s.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0u64; len.div_ceil(64)],
        }
    }

    pub fn from_bits(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (j, &b) in bits.iter().enumerate() {
            if b {
                v.set(j, true);
            }
        }
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, j: usize) -> bool {
        debug_assert!(j < self.len);
        (self.words[j / 64] >> (j % 64)) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, j: usize, value: bool) {
        debug_assert!(j < self.len);
        let mask = 1u64 << (j % 64);
        if value {
            self.words[j / 64] |= mask;
        } else {
            self.words[j / 64] &= !mask;
        }
    }

    #[inline]
    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// XOR `other` into `self`. Lengths must match.
    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(other.words.iter()) {
            *a ^= b;
        }
    }

    /// Index of the lowest set bit, if any.
    pub fn first_set(&self) -> Option<usize> {
        for (w, &word) in self.words.iter().enumerate() {
            if word != 0 {
                return Some(w * 64 + word.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn iter_bits(&self) -> impl Iterator<Item = bool> + '_ {
        (0..self.len).map(move |j| self.get(j))
    }
}

/// A dense GF(2) matrix stored as one [`BitVec`] per row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: Vec<BitVec>,
    cols: usize,
}

impl BitMatrix {
    pub fn from_rows(rows: Vec<BitVec>) -> Self {
        let cols = rows.first().map_or(0, BitVec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self { rows, cols }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows: vec![BitVec::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim, dim);
        for d in 0..dim {
            m.rows[d].set(d, true);
        }
        m
    }

    #[inline]
    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    #[inline]
    pub fn n_cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn row(&self, i: usize) -> &BitVec {
        &self.rows[i]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut BitVec {
        &mut self.rows[i]
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }
}

/// GF(2) row rank via Gaussian elimination on a copy of `m`.
pub fn rank(m: &BitMatrix) -> usize {
    RowEchelon::from_matrix(m).rank()
}

/// Row-echelon basis of a GF(2) rowspace.
///
/// Rows are kept reduced so that each has a unique pivot column; membership
/// of a vector in the span is a single sweep of word-parallel XORs, which is
/// what lets the coset membership oracle answer one query per decoded frame
/// cheaply.
#[derive(Debug, Clone)]
pub struct RowEchelon {
    // Sorted by pivot column; rows[i] has its lowest set bit at pivots[i].
    pivots: Vec<usize>,
    rows: Vec<BitVec>,
    cols: usize,
}

impl RowEchelon {
    pub fn from_matrix(m: &BitMatrix) -> Self {
        let mut e = Self {
            pivots: Vec::new(),
            rows: Vec::new(),
            cols: m.n_cols(),
        };
        for r in m.rows() {
            e.insert(r.clone());
        }
        e
    }

    /// Reduce `row` against the basis; if a nonzero remainder survives, add
    /// it as a new basis row. Returns true if the basis grew.
    pub fn insert(&mut self, mut row: BitVec) -> bool {
        assert_eq!(row.len(), self.cols);
        while let Some(p) = row.first_set() {
            match self.pivots.binary_search(&p) {
                Ok(idx) => row.xor_assign(&self.rows[idx]),
                Err(idx) => {
                    self.pivots.insert(idx, p);
                    self.rows.insert(idx, row);
                    return true;
                }
            }
        }
        false
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    /// Basis rows (each a GF(2) combination of the original matrix rows).
    pub fn basis(&self) -> &[BitVec] {
        &self.rows
    }

    /// True iff `v` lies in the rowspace spanned by the basis.
    pub fn contains(&self, v: &BitVec) -> bool {
        assert_eq!(v.len(), self.cols);
        let mut w = v.clone();
        loop {
            match w.first_set() {
                None => return true,
                Some(p) => match self.pivots.binary_search(&p) {
                    Ok(idx) => w.xor_assign(&self.rows[idx]),
                    Err(_) => return false,
                },
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn zero_matrix_has_rank_zero() {
        let m = BitMatrix::zeros(4, 7);
        assert_eq!(rank(&m), 0);
    }

    #[test]
    fn identity_has_full_rank() {
        for d in [1, 5, 64, 65, 130] {
            assert_eq!(rank(&BitMatrix::identity(d)), d);
        }
    }

    #[test]
    fn duplicate_rows_do_not_increase_rank() {
        let r = BitVec::from_bits(&[true, false, true, true]);
        let m = BitMatrix::from_rows(vec![r.clone(), r.clone(), r]);
        assert_eq!(rank(&m), 1);
    }

    // Oracle: the span of an r-rank matrix over GF(2) has exactly 2^r
    // distinct elements. Enumerate all row combinations and count.
    fn span_size(m: &BitMatrix) -> usize {
        let n_rows = m.n_rows();
        assert!(n_rows <= 20, "oracle is exponential in rows");
        let mut seen = HashSet::new();
        for mask in 0u32..(1 << n_rows) {
            let mut acc = BitVec::zeros(m.n_cols());
            for (i, row) in m.rows().iter().enumerate() {
                if (mask >> i) & 1 == 1 {
                    acc.xor_assign(row);
                }
            }
            seen.insert(acc);
        }
        seen.len()
    }

    #[test]
    fn rank_matches_exhaustive_span_count() {
        // Hand-picked small matrices with dependent rows.
        let m = BitMatrix::from_rows(vec![
            BitVec::from_bits(&[true, true, false, false, true]),
            BitVec::from_bits(&[false, true, true, false, false]),
            BitVec::from_bits(&[true, false, true, false, true]), // row0 ^ row1
            BitVec::from_bits(&[false, false, false, true, true]),
        ]);
        let r = rank(&m);
        assert_eq!(span_size(&m), 1 << r);
        assert_eq!(r, 3);
    }

    #[test]
    fn randomized_rank_against_span_oracle() {
        let mut state = 0x1234_5678_9abc_def0u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            state
        };
        for _ in 0..50 {
            let n_rows = 1 + (next() % 8) as usize;
            let n_cols = 1 + (next() % 12) as usize;
            let rows = (0..n_rows)
                .map(|_| {
                    let bits: Vec<bool> = (0..n_cols).map(|_| next() & 1 == 1).collect();
                    BitVec::from_bits(&bits)
                })
                .collect();
            let m = BitMatrix::from_rows(rows);
            let r = rank(&m);
            assert!(r <= n_rows.min(n_cols));
            assert_eq!(span_size(&m), 1 << r);
        }
    }

    #[test]
    fn echelon_contains_exactly_the_span() {
        let m = BitMatrix::from_rows(vec![
            BitVec::from_bits(&[true, true, false]),
            BitVec::from_bits(&[false, true, true]),
        ]);
        let e = RowEchelon::from_matrix(&m);
        let mut members = 0;
        for mask in 0u8..8 {
            let bits: Vec<bool> = (0..3).map(|j| (mask >> j) & 1 == 1).collect();
            let v = BitVec::from_bits(&bits);
            if e.contains(&v) {
                members += 1;
            }
        }
        assert_eq!(members, 1 << e.rank());
        assert!(e.contains(&BitVec::zeros(3)));
        assert!(!e.contains(&BitVec::from_bits(&[true, false, false])));
    }

    #[test]
    fn bitvec_set_get_across_word_boundary() {
        let mut v = BitVec::zeros(130);
        v.set(0, true);
        v.set(63, true);
        v.set(64, true);
        v.set(129, true);
        assert!(v.get(0) && v.get(63) && v.get(64) && v.get(129));
        assert!(!v.get(1) && !v.get(65) && !v.get(128));
        assert_eq!(v.first_set(), Some(0));
        v.set(0, false);
        assert_eq!(v.first_set(), Some(63));
    }
}
