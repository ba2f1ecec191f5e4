//! Binary linear block codes: Reed–Muller construction, duals, codeword
//! enumeration and generalized Hamming weights.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bitmatrix::{BitMatrix, Word};
use crate::subsets;
use crate::{Error, Result};

/// An `(n, dim)` binary linear code held by a full-row-rank generator matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    generator: BitMatrix,
    label: String,
}

impl LinearCode {
    /// Wraps a generator matrix, which must have full row rank.
    pub fn new(generator: BitMatrix, label: impl Into<String>) -> Result<Self> {
        let rank = generator.rank();
        if rank != generator.rows() {
            return Err(Error::NotFullRank {
                rank,
                rows: generator.rows(),
            });
        }
        Ok(Self {
            generator,
            label: label.into(),
        })
    }

    /// Code spanned by the rows of `m`, which may be dependent.
    pub fn from_spanning(m: &BitMatrix, label: impl Into<String>) -> Self {
        let (reduced, pivots) = m.rref();
        let mut generator = BitMatrix::zeros(pivots.len(), m.cols());
        for r in 0..pivots.len() {
            for c in 0..m.cols() {
                generator.set(r, c, reduced.get(r, c));
            }
        }
        Self {
            generator,
            label: label.into(),
        }
    }

    pub fn zero_code(n: usize) -> Self {
        Self {
            generator: BitMatrix::zeros(0, n),
            label: format!("zero({n})"),
        }
    }

    pub fn full_space(n: usize) -> Self {
        Self {
            generator: BitMatrix::identity(n),
            label: format!("full({n})"),
        }
    }

    pub fn n(&self) -> usize {
        self.generator.cols()
    }

    pub fn dim(&self) -> usize {
        self.generator.rows()
    }

    pub fn generator(&self) -> &BitMatrix {
        &self.generator
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn contains(&self, word: &Word) -> bool {
        if word.len() != self.n() {
            return false;
        }
        let Ok(row) = BitMatrix::from_words(&[*word], self.n()) else {
            return false;
        };
        self.generator.vstack(&row).map(|m| m.rank()).unwrap_or(0) == self.dim()
    }

    /// Whether every codeword of `self` lies in `other`.
    pub fn is_subcode_of(&self, other: &LinearCode) -> bool {
        self.n() == other.n()
            && other
                .generator
                .vstack(&self.generator)
                .map(|m| m.rank() == other.dim())
                .unwrap_or(false)
    }

    /// Same set of codewords, regardless of generator basis.
    pub fn same_codewords(&self, other: &LinearCode) -> bool {
        self.dim() == other.dim() && self.is_subcode_of(other)
    }

    /// The dual code, generated by a basis of the null space of the
    /// generator.
    pub fn dual(&self) -> LinearCode {
        LinearCode {
            generator: self.generator.null_space(),
            label: format!("dual {}", self.label),
        }
    }

    /// All `2^dim` codewords. Codeword `c` is `m·G` where `m` is the
    /// `dim`-bit binary expansion of `c`, most significant bit first.
    pub fn enumerate_codewords(&self, cap: usize) -> Result<Vec<Word>> {
        if self.dim() > cap {
            return Err(Error::TooLarge {
                what: "code dimension",
                size: self.dim(),
                cap,
            });
        }
        if self.n() > Word::MAX_LEN {
            return Err(Error::TooLarge {
                what: "blocklength",
                size: self.n(),
                cap: Word::MAX_LEN,
            });
        }
        let rows = self.generator.row_words();
        let dim = self.dim();
        Ok((0..1u64 << dim)
            .map(|c| {
                let bits = rows
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| (c >> (dim - 1 - j)) & 1 == 1)
                    .fold(0, |acc, (_, w)| acc ^ w.bits());
                Word::new(self.n(), bits)
            })
            .collect())
    }

    /// Smallest nonzero codeword weight, by enumeration.
    pub fn min_distance(&self, cap: usize) -> Result<Option<u32>> {
        Ok(self
            .enumerate_codewords(cap)?
            .iter()
            .map(Word::weight)
            .filter(|&w| w > 0)
            .min())
    }
}

pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) as u64 / (i + 1) as u64)
}

/// Dimension of RM(order, degree), `Σ_{i ≤ order} C(degree, i)`.
pub fn reed_muller_dim(order: usize, degree: usize) -> usize {
    (0..=order.min(degree)).map(|i| binomial(degree, i) as usize).sum()
}

/// The Reed–Muller code RM(`order`, `degree`) of length `2^degree`.
///
/// Rows are evaluation vectors of the monomials of degree at most `order` in
/// `degree` boolean variables, in graded lexicographic order (constant first,
/// then `x1 … xm`, then `x1x2, x1x3, …`). Coordinate `j` evaluates at the point
/// whose variable `x_i` is bit `degree - i` of `j`, so `x1` is the most
/// significant.
pub fn reed_muller(order: usize, degree: usize) -> Result<LinearCode> {
    if degree < 1 || order > degree || degree > 16 {
        return Err(Error::ReedMullerParameters { order, degree });
    }
    let n = 1usize << degree;
    let mut monomials: Vec<Vec<usize>> = Vec::new();
    for d in 0..=order {
        let mut combo: Vec<usize> = (0..d).collect();
        loop {
            monomials.push(combo.clone());
            // Next combination in lexicographic order.
            let Some(i) = (0..d).rev().find(|&i| combo[i] < degree - d + i) else {
                break;
            };
            combo[i] += 1;
            for j in i + 1..d {
                combo[j] = combo[j - 1] + 1;
            }
        }
    }
    let mut g = BitMatrix::zeros(monomials.len(), n);
    for (r, vars) in monomials.iter().enumerate() {
        for j in 0..n {
            if vars.iter().all(|&v| (j >> (degree - 1 - v)) & 1 == 1) {
                g.set(r, j, true);
            }
        }
    }
    LinearCode::new(g, format!("RM({order},{degree})"))
}

/// Generalized Hamming weights `d_1 < d_2 < … < d_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GhwProfile(Vec<usize>);

impl GhwProfile {
    /// Validates strict monotonicity.
    pub fn new(weights: Vec<usize>) -> Option<Self> {
        weights.windows(2).all(|w| w[0] < w[1]).then_some(Self(weights))
    }

    pub fn weights(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `d_r` for `r` in `1..=dim`.
    pub fn get(&self, r: usize) -> Option<usize> {
        r.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    /// Number of weights that are at most `mu`.
    pub fn count_at_most(&self, mu: usize) -> usize {
        self.0.partition_point(|&d| d <= mu)
    }
}

/// Which computation produced a [`GhwProfile`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GhwSource {
    ExactSearch,
    ClosedForm,
}

/// Exact generalized Hamming weights by subset search.
///
/// For a coordinate set `S`, the subcode supported inside `S` has dimension
/// `|S| - rank(H_S)` with `H` a parity-check matrix. The search walks `μ`
/// upward; the best nullity can rise by at most one per step, so each step
/// only asks whether some `μ`-subset reaches the previous best plus one.
pub fn ghw_exact(code: &LinearCode, cap: usize) -> Result<GhwProfile> {
    let n = code.n();
    if n > cap {
        return Err(Error::TooLarge {
            what: "blocklength for exact GHW search",
            size: n,
            cap,
        });
    }
    let parity = code.dual();
    if parity.dim() > 64 {
        return Err(Error::TooLarge {
            what: "redundancy for exact GHW search",
            size: parity.dim(),
            cap: 64,
        });
    }
    let columns = parity.generator().column_words();
    let mut weights = Vec::with_capacity(code.dim());
    let mut best = 0;
    for mu in 1..=n {
        if best == code.dim() {
            break;
        }
        if subsets::exists_nullity(&columns, mu, best + 1) {
            best += 1;
            weights.push(mu);
        }
    }
    debug_assert_eq!(weights.len(), code.dim());
    Ok(GhwProfile(weights))
}

/// GHW profile of RM(`order`, `degree`): exact search when `2^degree` is within
/// `exact_cap`, otherwise the closed form for Reed–Muller codes.
pub fn ghw_reed_muller_with_cap(order: usize, degree: usize, exact_cap: usize) -> Result<(GhwProfile, GhwSource)> {
    if degree < 1 || order > degree {
        return Err(Error::ReedMullerParameters { order, degree });
    }
    if degree < usize::BITS as usize && (1usize << degree) <= exact_cap {
        let code = reed_muller(order, degree)?;
        Ok((ghw_exact(&code, exact_cap)?, GhwSource::ExactSearch))
    } else {
        Ok((ghw_reed_muller_closed_form(order, degree)?, GhwSource::ClosedForm))
    }
}

pub fn ghw_reed_muller(order: usize, degree: usize) -> Result<(GhwProfile, GhwSource)> {
    ghw_reed_muller_with_cap(order, degree, crate::Limits::default().ghw_exact)
}

/// Closed-form GHWs of RM(`order`, `degree`).
///
/// Each `r` is split greedily as `r = Σ_i k(u_i, m_i)` with
/// `degree ≥ m_1 > m_2 > … ≥ 0` and `u_i = m_i - (degree - order) + i - 1`,
/// where `k(u, m)` is the dimension of RM(u, m) (the whole space when
/// `u ≥ m`). Then `d_r = Σ_i 2^{m_i}`: each term is the subcode living on one
/// flat of dimension `m_i`.
pub fn ghw_reed_muller_closed_form(order: usize, degree: usize) -> Result<GhwProfile> {
    if degree < 1 || order > degree || degree > 40 {
        return Err(Error::ReedMullerParameters { order, degree });
    }
    let dim = reed_muller_dim(order, degree);
    let codim = (degree - order) as i64;
    let term = |m: usize, i: usize| -> usize {
        let u = m as i64 - codim + i as i64 - 1;
        if u < 0 {
            0
        } else {
            reed_muller_dim(u as usize, m)
        }
    };
    let mut weights = Vec::with_capacity(dim);
    for r in 1..=dim {
        let mut rem = r;
        let mut total = 0usize;
        let mut upper = degree + 1;
        let mut i = 1;
        while rem > 0 {
            let m = (0..upper)
                .rev()
                .find(|&m| {
                    let t = term(m, i);
                    t > 0 && t <= rem
                })
                .ok_or(Error::ReedMullerParameters { order, degree })?;
            rem -= term(m, i);
            total += 1 << m;
            upper = m;
            i += 1;
        }
        weights.push(total);
    }
    GhwProfile::new(weights).ok_or(Error::ReedMullerParameters { order, degree })
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn table_one() -> LinearCode {
        LinearCode::new(BitMatrix::from_bitstrings(&["0111", "1110"], 4).unwrap(), "table-I").unwrap()
    }

    fn strings(words: &[Word]) -> Vec<String> {
        words.iter().map(|w| format!("{w}")).collect()
    }

    #[test]
    fn reed_muller_shapes() {
        let c = reed_muller(1, 2).unwrap();
        assert_eq!((c.n(), c.dim()), (4, 3));
        let rep = reed_muller(0, 3).unwrap();
        assert_eq!((rep.n(), rep.dim()), (8, 1));
        assert_eq!(rep.generator().row_string(0), "11111111");
        let c = reed_muller(1, 3).unwrap();
        assert_eq!((c.n(), c.dim()), (8, 4));
        assert_eq!(c.min_distance(24).unwrap(), Some(4));
    }

    #[test]
    fn reed_muller_graded_lex_rows() {
        let c = reed_muller(2, 3).unwrap();
        assert_eq!(
            c.generator().to_bitstrings(),
            ["11111111", "00001111", "00110011", "01010101", "00000011", "00000101", "00010001"]
        );
    }

    #[test]
    fn reed_muller_rejects_bad_parameters() {
        assert!(reed_muller(3, 2).is_err());
        assert!(reed_muller(0, 0).is_err());
    }

    #[test]
    fn dual_examples() {
        let h = LinearCode::new(BitMatrix::from_bitstrings(&["1101", "1011"], 4).unwrap(), "H").unwrap();
        assert!(table_one().dual().same_codewords(&h));
        assert!(reed_muller(1, 2)
            .unwrap()
            .dual()
            .same_codewords(&reed_muller(0, 2).unwrap()));
        assert_eq!(LinearCode::full_space(5).dual().dim(), 0);
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            strings(&table_one().enumerate_codewords(24).unwrap()),
            ["0000", "1110", "0111", "1001"]
        );
        assert_eq!(
            strings(&LinearCode::zero_code(3).enumerate_codewords(24).unwrap()),
            ["000"]
        );
        assert_eq!(
            strings(&reed_muller(0, 2).unwrap().enumerate_codewords(24).unwrap()),
            ["0000", "1111"]
        );
        assert!(matches!(
            reed_muller(2, 5).unwrap().enumerate_codewords(10),
            Err(Error::TooLarge { size: 16, cap: 10, .. })
        ));
    }

    #[test]
    fn ghw_exact_examples() {
        assert_eq!(ghw_exact(&table_one().dual(), 20).unwrap().weights(), [2, 4]);
        assert_eq!(ghw_exact(&reed_muller(0, 2).unwrap(), 20).unwrap().weights(), [4]);
        assert_eq!(ghw_exact(&LinearCode::full_space(2), 20).unwrap().weights(), [1, 2]);
        assert!(ghw_exact(&reed_muller(1, 5).unwrap(), 20).is_err());
    }

    #[test]
    fn ghw_reed_muller_examples() {
        let (p, src) = ghw_reed_muller(1, 2).unwrap();
        assert_eq!(p.weights(), [2, 3, 4]);
        assert_eq!(src, GhwSource::ExactSearch);
        for m in 1..=6 {
            let (p, _) = ghw_reed_muller(0, m).unwrap();
            assert_eq!(p.weights(), [1 << m]);
            let (p, _) = ghw_reed_muller(m, m).unwrap();
            assert_eq!(p.weights(), (1..=1 << m).collect::<Vec<_>>());
        }
        let (_, src) = ghw_reed_muller(2, 5).unwrap();
        assert_eq!(src, GhwSource::ClosedForm);
    }

    #[test]
    fn closed_form_matches_exact_search() {
        for m in 1..=4 {
            for u in 0..=m {
                let exact = ghw_exact(&reed_muller(u, m).unwrap(), 20).unwrap();
                assert_eq!(ghw_reed_muller_closed_form(u, m).unwrap(), exact, "RM({u},{m})");
            }
        }
    }

    #[test]
    fn profile_helpers() {
        let p = GhwProfile::new(vec![2, 4]).unwrap();
        assert_eq!(p.count_at_most(1), 0);
        assert_eq!(p.count_at_most(2), 1);
        assert_eq!(p.count_at_most(3), 1);
        assert_eq!(p.count_at_most(4), 2);
        assert_eq!(p.get(2), Some(4));
        assert!(GhwProfile::new(vec![3, 3]).is_none());
    }

    #[test]
    fn rm_nesting() {
        for m in 1..=5 {
            for u in 0..m {
                let lo = reed_muller(u, m).unwrap();
                let hi = reed_muller(u + 1, m).unwrap();
                assert!(lo.is_subcode_of(&hi));
            }
        }
    }
}
