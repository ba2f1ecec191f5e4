#![allow(dead_code)]

use std::collections::BTreeSet;

use physec_core::{BitMatrix, LinearCode, Word};
use proptest::prelude::*;

pub fn matrix_from_masks(masks: &[u64], cols: usize) -> BitMatrix {
    let words: Vec<Word> = masks.iter().map(|&m| Word::new(cols, m)).collect();
    BitMatrix::from_words(&words, cols).unwrap()
}

pub fn row_masks(m: &BitMatrix) -> Vec<u64> {
    m.row_words().iter().map(Word::bits).collect()
}

/// Every XOR combination of the given vectors.
pub fn span(vectors: &[u64]) -> BTreeSet<u64> {
    let mut out = BTreeSet::from([0u64]);
    for &v in vectors {
        let next: Vec<u64> = out.iter().map(|w| w ^ v).collect();
        out.extend(next);
    }
    out
}

pub fn span_rank(vectors: &[u64]) -> usize {
    span(vectors).len().trailing_zeros() as usize
}

/// A random matrix with `rows × cols` entries, as row masks.
pub fn masks(rows: std::ops::RangeInclusive<usize>, cols: usize) -> impl Strategy<Value = Vec<u64>> {
    let limit = if cols == 64 { u64::MAX } else { (1u64 << cols) - 1 };
    prop::collection::vec(0..=limit, rows)
}

/// A random binary code of length in `lengths` with `0 < dim < n`.
pub fn code(lengths: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = LinearCode> {
    lengths
        .prop_flat_map(|n| (Just(n), masks(1..=n - 1, n)))
        .prop_filter_map("degenerate", |(n, rows)| {
            let c = LinearCode::from_spanning(&matrix_from_masks(&rows, n), "random");
            (c.dim() > 0 && c.dim() < n).then_some(c)
        })
}

/// Deterministic pseudo-random codes, so that corpora are identical run to run.
pub fn seeded_codes(count: usize, n_min: usize, n_max: usize, seed: u64) -> Vec<LinearCode> {
    let mut state = seed;
    let mut next = || {
        state = physec_core::seed::splitmix64(state);
        state
    };
    let mut out = Vec::new();
    while out.len() < count {
        let n = n_min + (next() as usize) % (n_max - n_min + 1);
        let rows = 1 + (next() as usize) % (n - 1);
        let masks: Vec<u64> = (0..rows).map(|_| next() & ((1u64 << n) - 1)).collect();
        let c = LinearCode::from_spanning(&matrix_from_masks(&masks, n), format!("seeded-{}", out.len()));
        if c.dim() > 0 && c.dim() < n {
            out.push(c);
        }
    }
    out
}
