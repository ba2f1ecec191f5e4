mod common;

use common::{code, row_masks, span};
use physec_core::codes::{self, ghw_exact, ghw_reed_muller, ghw_reed_muller_closed_form, reed_muller};
use physec_core::{GhwSource, LinearCode};
use proptest::prelude::*;

/// Generalized Hamming weights by brute force: the support of a subspace is
/// the union of the supports of any basis, so minimize over independent
/// r-tuples of codewords.
fn ghw_oracle(c: &LinearCode) -> Vec<usize> {
    let words: Vec<u64> = span(&row_masks(c.generator()))
        .into_iter()
        .filter(|&w| w != 0)
        .collect();
    let mut best = vec![usize::MAX; c.dim()];
    fn walk(words: &[u64], start: usize, chosen: &mut Vec<u64>, support: u64, best: &mut [usize]) {
        let r = chosen.len();
        if r > 0 {
            best[r - 1] = best[r - 1].min(support.count_ones() as usize);
        }
        if r == best.len() {
            return;
        }
        for i in start..words.len() {
            let w = words[i];
            if common::span_rank(&[chosen.as_slice(), &[w]].concat()) == r + 1 {
                chosen.push(w);
                walk(words, i + 1, chosen, support | w, best);
                chosen.pop();
            }
        }
    }
    walk(&words, 0, &mut Vec::new(), 0, &mut best);
    best
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn dual_of_dual_is_the_code(c in code(2..=12)) {
        let d = c.dual();
        prop_assert_eq!(c.dim() + d.dim(), c.n());
        prop_assert!(c.generator().mul(&d.generator().transpose()).unwrap().is_zero());
        prop_assert!(d.dual().same_codewords(&c));
    }

    #[test]
    fn enumeration_is_the_span(c in code(2..=10)) {
        let listed = c.enumerate_codewords(24).unwrap();
        prop_assert_eq!(listed.len(), 1 << c.dim());
        let set: std::collections::BTreeSet<u64> = listed.iter().map(|w| w.bits()).collect();
        prop_assert_eq!(set, span(&row_masks(c.generator())));
        prop_assert!(listed.iter().all(|w| c.contains(w)));
    }

    #[test]
    fn ghw_matches_subspace_oracle(c in code(2..=7)) {
        let exact = ghw_exact(&c, 20).unwrap();
        let oracle = ghw_oracle(&c);
        prop_assert_eq!(exact.weights(), oracle.as_slice());
        // Monotonicity bounds.
        let w = exact.weights();
        prop_assert!(w.windows(2).all(|p| p[0] < p[1]));
        prop_assert!(w.last().copied().unwrap_or(0) <= c.n());
        let dmin = c.min_distance(24).unwrap().unwrap() as usize;
        prop_assert_eq!(w[0], dmin);
    }
}

#[test]
fn reed_muller_dimensions_and_duality() {
    for m in 1..=6 {
        for u in 0..=m {
            let c = reed_muller(u, m).unwrap();
            assert_eq!((c.n(), c.dim()), (1 << m, codes::reed_muller_dim(u, m)));
            if u < m {
                let d = reed_muller(m - u - 1, m).unwrap();
                assert!(c.dual().same_codewords(&d), "RM({u},{m}) dual");
            }
        }
    }
}

#[test]
fn reed_muller_minimum_distance() {
    for m in 1..=4 {
        for u in 0..=m {
            let c = reed_muller(u, m).unwrap();
            assert_eq!(c.min_distance(24).unwrap(), Some(1 << (m - u)));
        }
    }
}

#[test]
fn closed_form_agrees_with_search_up_to_sixteen() {
    for m in 1..=4 {
        for u in 0..=m {
            let exact = ghw_exact(&reed_muller(u, m).unwrap(), 20).unwrap();
            let formula = ghw_reed_muller_closed_form(u, m).unwrap();
            assert_eq!(exact, formula, "RM({u},{m})");
            let (chosen, source) = ghw_reed_muller(u, m).unwrap();
            assert_eq!(source, GhwSource::ExactSearch);
            assert_eq!(chosen, exact);
        }
    }
}

#[test]
fn closed_form_used_beyond_the_search_cap() {
    let (p, source) = ghw_reed_muller(1, 5).unwrap();
    assert_eq!(source, GhwSource::ClosedForm);
    // First-order RM(1,5): d_1 = 16, then doubling structure.
    assert_eq!(p.weights(), &[16, 24, 28, 30, 31, 32]);
}

#[test]
#[ignore = "exact GHW search at n = 32 takes minutes"]
fn closed_form_agrees_with_search_at_thirty_two() {
    for u in 0..=5 {
        let exact = ghw_exact(&reed_muller(u, 5).unwrap(), 32).unwrap();
        assert_eq!(exact, ghw_reed_muller_closed_form(u, 5).unwrap(), "RM({u},5)");
    }
}
