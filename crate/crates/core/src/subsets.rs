//! Depth-first walks over fixed-size column subsets with incremental rank.

use crate::bitmatrix::WordStack;

/// Visits every `size`-subset of `columns` in lexicographic index order and
/// calls `visit` with the nullity (`size - rank`) of the chosen columns.
pub(crate) fn for_each_nullity(columns: &[u64], size: usize, mut visit: impl FnMut(usize)) {
    if size > columns.len() {
        return;
    }
    let mut stack = WordStack::with_capacity(size);
    walk(columns, 0, size, &mut stack, &mut visit);
}

fn walk(columns: &[u64], start: usize, size: usize, stack: &mut WordStack, visit: &mut impl FnMut(usize)) {
    if stack.pushed() == size {
        visit(stack.nullity());
        return;
    }
    let need = size - stack.pushed();
    for i in start..=columns.len() - need {
        stack.push(columns[i]);
        walk(columns, i + 1, size, stack, visit);
        stack.pop();
    }
}

/// Whether some `size`-subset of `columns` has nullity at least `target`.
///
/// Branches are cut when even all-dependent remaining picks could not reach
/// the target.
pub(crate) fn exists_nullity(columns: &[u64], size: usize, target: usize) -> bool {
    if target > size || size > columns.len() {
        return false;
    }
    let mut stack = WordStack::with_capacity(size);
    search(columns, 0, size, target, &mut stack)
}

fn search(columns: &[u64], start: usize, size: usize, target: usize, stack: &mut WordStack) -> bool {
    let chosen = stack.pushed();
    if stack.nullity() + (size - chosen) < target {
        return false;
    }
    if chosen == size {
        return true;
    }
    let need = size - chosen;
    for i in start..=columns.len() - need {
        stack.push(columns[i]);
        let found = search(columns, i + 1, size, target, stack);
        stack.pop();
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;

    #[test]
    fn visits_binomial_many() {
        let cols = [1u64, 2, 4, 8, 3];
        let mut seen = Vec::new();
        for_each_nullity(&cols, 2, |n| seen.push(n));
        assert_eq!(seen.len(), 10);
        let mut zero = 0;
        for_each_nullity(&cols, 0, |_| zero += 1);
        assert_eq!(zero, 1);
    }

    #[test]
    fn finds_dependent_triple() {
        let cols = [1u64, 2, 4, 3];
        assert!(exists_nullity(&cols, 3, 1));
        assert!(!exists_nullity(&cols, 3, 2));
        assert!(!exists_nullity(&cols, 2, 1));
    }
}
