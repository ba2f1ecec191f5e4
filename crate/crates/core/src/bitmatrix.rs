//! Dense linear algebra over the binary field.
//!
//! Bit index 0 is the leftmost symbol of a written vector, so the string
//! `"1011"` is the vector `[1, 0, 1, 1]`. Rows are packed into `u64` words with
//! column `j` stored at bit `j % 64` of word `j / 64`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// A binary vector of at most 64 symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    len: usize,
    bits: u64,
}

impl Word {
    pub const MAX_LEN: usize = 64;

    pub fn new(len: usize, bits: u64) -> Self {
        assert!(len <= Self::MAX_LEN, "word length {len} exceeds 64");
        Self {
            len,
            bits: bits & low_mask(len),
        }
    }

    pub fn zero(len: usize) -> Self {
        Self::new(len, 0)
    }

    /// Word whose symbol `i` is bit `len - 1 - i` of `value`, so that counting
    /// `value` upward walks messages in the order a table lists them
    /// (`00, 01, 10, 11`).
    pub fn from_msb_value(len: usize, value: u64) -> Self {
        let mut bits = 0;
        for i in 0..len {
            if (value >> (len - 1 - i)) & 1 == 1 {
                bits |= 1 << i;
            }
        }
        Self::new(len, bits)
    }

    /// Inverse of [`Word::from_msb_value`].
    pub fn msb_value(&self) -> u64 {
        (0..self.len).fold(0, |acc, i| (acc << 1) | u64::from(self.get(i)))
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// Packed symbols, symbol `i` at bit `i`.
    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn weight(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > Self::MAX_LEN {
            return Err(Error::InvalidBits(s.into()));
        }
        let mut bits = 0;
        for (i, c) in s.chars().enumerate() {
            match c {
                '0' => {}
                '1' => bits |= 1 << i,
                _ => return Err(Error::InvalidBits(s.into())),
            }
        }
        Ok(Self::new(s.len(), bits))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

pub(crate) fn low_mask(len: usize) -> u64 {
    if len >= 64 {
        u64::MAX
    } else {
        (1u64 << len) - 1
    }
}

/// Incremental span of `u64` vectors, used to track rank while columns are
/// added and removed in subset searches.
///
/// Every stored vector has a distinct pivot bit that no other stored vector
/// contains, so membership is decided by one pass of conditional XORs.
#[derive(Debug, Clone, Default)]
pub struct WordBasis {
    vectors: Vec<u64>,
    pivots: Vec<u64>,
}

impl WordBasis {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.vectors.len()
    }

    pub fn reduce(&self, mut v: u64) -> u64 {
        for (b, p) in self.vectors.iter().zip(&self.pivots) {
            if v & p != 0 {
                v ^= b;
            }
        }
        v
    }

    /// Adds `v` to the span. Returns `true` when the rank grew.
    pub fn push(&mut self, v: u64) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        let pivot = r & r.wrapping_neg();
        for b in self.vectors.iter_mut() {
            if *b & pivot != 0 {
                *b ^= r;
            }
        }
        self.vectors.push(r);
        self.pivots.push(pivot);
        true
    }

    pub fn contains(&self, v: u64) -> bool {
        self.reduce(v) == 0
    }
}

/// Rank tracker with stack-ordered undo, for depth-first subset searches.
///
/// Unlike [`WordBasis`], stored vectors are only reduced against earlier
/// entries, so popping is a plain truncation.
#[derive(Debug, Clone, Default)]
pub(crate) struct WordStack {
    vectors: Vec<u64>,
    pivots: Vec<u64>,
    /// One entry per push: whether it raised the rank.
    log: Vec<bool>,
}

impl WordStack {
    pub fn with_capacity(n: usize) -> Self {
        Self {
            vectors: Vec::with_capacity(n),
            pivots: Vec::with_capacity(n),
            log: Vec::with_capacity(n),
        }
    }

    pub fn pushed(&self) -> usize {
        self.log.len()
    }

    /// Number of pushes that did not raise the rank.
    pub fn nullity(&self) -> usize {
        self.log.len() - self.vectors.len()
    }

    pub fn push(&mut self, mut v: u64) -> bool {
        for (b, p) in self.vectors.iter().zip(&self.pivots) {
            if v & p != 0 {
                v ^= b;
            }
        }
        let grew = v != 0;
        if grew {
            self.vectors.push(v);
            self.pivots.push(v & v.wrapping_neg());
        }
        self.log.push(grew);
        grew
    }

    pub fn pop(&mut self) {
        if self.log.pop() == Some(true) {
            self.vectors.pop();
            self.pivots.pop();
        }
    }
}

/// Dense matrix over the binary field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    stride: usize,
    data: Vec<u64>,
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BitMatrix({}x{}", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, " {}", self.row_string(r))?;
        }
        f.write_str(")")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            if r > 0 {
                f.write_str("\n")?;
            }
            f.write_str(&self.row_string(r))?;
        }
        Ok(())
    }
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        let stride = cols.div_ceil(64);
        Self {
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

    /// Builds a matrix from rows written as `0`/`1` strings.
    pub fn from_bitstrings<S: AsRef<str>>(rows: &[S], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(rows.len(), cols);
        for (r, s) in rows.iter().enumerate() {
            let s = s.as_ref().trim();
            if s.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: s.len(),
                });
            }
            for (c, ch) in s.chars().enumerate() {
                match ch {
                    '0' => {}
                    '1' => m.set(r, c, true),
                    _ => return Err(Error::InvalidBits(s.into())),
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix whose rows are the given words (all of length `cols`).
    pub fn from_words(words: &[Word], cols: usize) -> Result<Self> {
        let mut m = Self::zeros(words.len(), cols);
        for (r, w) in words.iter().enumerate() {
            if w.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    found: w.len(),
                });
            }
            if cols > 0 {
                m.data[r * m.stride] = w.bits();
            }
        }
        Ok(m)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.data[r * self.stride + c / 64] >> (c % 64)) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        let w = &mut self.data[r * self.stride + c / 64];
        if value {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.stride..(r + 1) * self.stride]
    }

    fn row_mut(&mut self, r: usize) -> &mut [u64] {
        &mut self.data[r * self.stride..(r + 1) * self.stride]
    }

    /// Row `r` as a [`Word`]. Requires at most 64 columns.
    pub fn row_word(&self, r: usize) -> Word {
        assert!(self.cols <= Word::MAX_LEN, "row wider than 64 bits");
        Word::new(self.cols, if self.cols == 0 { 0 } else { self.row(r)[0] })
    }

    pub fn row_words(&self) -> Vec<Word> {
        (0..self.rows).map(|r| self.row_word(r)).collect()
    }

    /// Column `c` packed with row `i` at bit `i`. Requires at most 64 rows.
    pub fn column_word(&self, c: usize) -> u64 {
        assert!(self.rows <= 64, "column taller than 64 bits");
        (0..self.rows).fold(0, |acc, r| acc | (u64::from(self.get(r, c)) << r))
    }

    pub fn column_words(&self) -> Vec<u64> {
        (0..self.cols).map(|c| self.column_word(c)).collect()
    }

    pub fn row_string(&self, r: usize) -> String {
        (0..self.cols).map(|c| if self.get(r, c) { '1' } else { '0' }).collect()
    }

    pub fn to_bitstrings(&self) -> Vec<String> {
        (0..self.rows).map(|r| self.row_string(r)).collect()
    }

    fn xor_row_into(&mut self, src: usize, dst: usize) {
        let stride = self.stride;
        for i in 0..stride {
            let v = self.data[src * stride + i];
            self.data[dst * stride + i] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.stride {
            self.data.swap(a * self.stride + i, b * self.stride + i);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&w| w == 0)
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for c in 0..self.cols {
            if lead == m.rows {
                break;
            }
            let Some(p) = (lead..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(lead, p);
            for r in 0..m.rows {
                if r != lead && m.get(r, c) {
                    m.xor_row_into(lead, r);
                }
            }
            pivots.push(c);
            lead += 1;
        }
        (m, pivots)
    }

    /// Dimension of the row space.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            if rank == m.rows {
                break;
            }
            let Some(p) = (rank..m.rows).find(|&r| m.get(r, c)) else {
                continue;
            };
            m.swap_rows(rank, p);
            for r in rank + 1..m.rows {
                if m.get(r, c) {
                    m.xor_row_into(rank, r);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Matrix product with XOR-accumulated dot products.
    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: other.rows,
                right_cols: other.cols,
            });
        }
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                if self.get(i, j) {
                    let src = other.row(j);
                    for (d, s) in out.row_mut(i).iter_mut().zip(src) {
                        *d ^= s;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                if self.get(r, c) {
                    t.set(c, r, true);
                }
            }
        }
        t
    }

    /// Submatrix keeping only `indices`, in the given order.
    pub fn column_select(&self, indices: &[usize]) -> Result<BitMatrix> {
        let mut seen = vec![false; self.cols];
        for &i in indices {
            if i >= self.cols {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: self.cols,
                });
            }
            if core::mem::replace(&mut seen[i], true) {
                return Err(Error::DuplicateIndex(i));
            }
        }
        let mut out = BitMatrix::zeros(self.rows, indices.len());
        for r in 0..self.rows {
            for (k, &c) in indices.iter().enumerate() {
                if self.get(r, c) {
                    out.set(r, k, true);
                }
            }
        }
        Ok(out)
    }

    /// `self` on top of `below`.
    pub fn vstack(&self, below: &BitMatrix) -> Result<BitMatrix> {
        if self.cols != below.cols {
            return Err(Error::ShapeMismatch {
                left_rows: self.rows,
                left_cols: self.cols,
                right_rows: below.rows,
                right_cols: below.cols,
            });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(BitMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            stride: self.stride,
            data,
        })
    }

    /// Basis of the right null space `{x : self · xᵀ = 0}`, one row per free
    /// column of the reduced echelon form, in increasing column order.
    pub fn null_space(&self) -> BitMatrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = BitMatrix::zeros(free.len(), self.cols);
        for (k, &f) in free.iter().enumerate() {
            out.set(k, f, true);
            for (i, &p) in pivots.iter().enumerate() {
                if r.get(i, f) {
                    out.set(k, p, true);
                }
            }
        }
        out
    }

    /// Rows that, stacked with `self`, span the whole space.
    ///
    /// Standard basis vectors are tried in increasing index and kept only when
    /// they raise the rank.
    pub fn complete_basis(&self) -> Result<BitMatrix> {
        let rank = self.rank();
        if rank != self.rows {
            return Err(Error::NotFullRank { rank, rows: self.rows });
        }
        if rank == self.cols {
            return Err(Error::NothingToComplete(self.cols));
        }
        let (reduced, mut pivots) = self.rref();
        let mut span = reduced;
        let mut extra = Vec::new();
        for i in 0..self.cols {
            if pivots.len() == self.cols {
                break;
            }
            let mut e = BitMatrix::zeros(1, self.cols);
            e.set(0, i, true);
            // Reduce e against the current echelon rows.
            for (row, &p) in pivots.iter().enumerate() {
                if e.get(0, p) {
                    for (d, s) in e.data.iter_mut().zip(span.row(row)) {
                        *d ^= s;
                    }
                }
            }
            if e.is_zero() {
                continue;
            }
            extra.push(i);
            let stacked = span.vstack(&e)?;
            let (next, next_pivots) = stacked.rref();
            span = next;
            pivots = next_pivots;
        }
        let mut out = BitMatrix::zeros(extra.len(), self.cols);
        for (k, &i) in extra.iter().enumerate() {
            out.set(k, i, true);
        }
        Ok(out)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<BitMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = BitMatrix::zeros(n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n + r, true);
        }
        let (red, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return None;
        }
        let mut inv = BitMatrix::zeros(n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, red.get(r, n + c));
            }
        }
        Some(inv)
    }

    /// `word · self` for a row vector of length `self.rows()`.
    pub fn left_mul_word(&self, word: &Word) -> Word {
        assert_eq!(word.len(), self.rows);
        let mut acc = 0u64;
        for r in 0..self.rows {
            if word.get(r) {
                acc ^= self.row_word(r).bits();
            }
        }
        Word::new(self.cols, acc)
    }
}
