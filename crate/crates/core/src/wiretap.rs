//! Coset wiretap codes over an error-free main channel and an erasure
//! eavesdropper channel.
//!
//! A message `m` (k bits) and a uniformly random auxiliary word `m'`
//! (`n - k` bits) are encoded as `x = m·G' ⊕ m'·G`, where `G` generates the
//! base code `C` and `G'` completes it to a basis of the whole space. Each
//! message therefore owns one coset of `C`. The receiver recovers `m` from the
//! syndrome `x·Hᵀ`.
//!
//! Leakage to an eavesdropper who sees the positions `R` is
//! `|R| - rank(G_R)` bits, where `G_R` keeps the columns of `G` in `R`; the
//! worst case over all `|R| = μ` equals the number of generalized Hamming
//! weights of `C⊥` that are at most `μ`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::bitmatrix::{low_mask, BitMatrix, Word};
use crate::codes::{self, GhwProfile, GhwSource, LinearCode};
use crate::subsets;
use crate::{Error, Limits, Result};

fn dot(a: u64, b: u64) -> bool {
    (a & b).count_ones() & 1 == 1
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum SyndromeMap {
    /// `G'·Hᵀ = I`: the syndrome is the message.
    Identity,
    /// Dense table from packed syndrome to packed message.
    Table(Vec<u64>),
    /// `(G'·Hᵀ)⁻¹`, used when the table would be too large.
    Linear(BitMatrix),
}

/// Which side of the coset construction a Reed–Muller code plays.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RmRole {
    /// RM(u, m) is the base code `C`.
    Code,
    /// RM(u, m) is `C⊥`, so `C` = RM(m - u - 1, m).
    Dual,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WiretapCode {
    base: LinearCode,
    gprime: BitMatrix,
    h: BitMatrix,
    n: usize,
    k: usize,
    label: String,
    syndrome_map: SyndromeMap,
    dual_ghw: Option<(GhwProfile, GhwSource)>,
    gprime_rows: Vec<u64>,
    g_rows: Vec<u64>,
    h_rows: Vec<u64>,
    g_columns: Vec<u64>,
}

/// Finds a basis `B` of the row space of `rows` with `B·Bᵀ = I`, if one
/// exists.
///
/// Vectors with odd self-product are split off one at a time and everything
/// else is made orthogonal to them. If only self-orthogonal vectors remain, a
/// hyperbolic pair `(a, b)` is folded together with an already chosen unit
/// vector `u` into the orthonormal triple `u+a, u+b, u+a+b`.
fn orthonormal_basis(rows: &[u64]) -> Option<Vec<u64>> {
    let mut rest: Vec<u64> = rows.to_vec();
    let mut out: Vec<u64> = Vec::with_capacity(rows.len());
    while !rest.is_empty() {
        if let Some(i) = rest.iter().position(|&v| dot(v, v)) {
            let v = rest.remove(i);
            for w in rest.iter_mut() {
                if dot(*w, v) {
                    *w ^= v;
                }
            }
            out.push(v);
            continue;
        }
        let (i, j) = (0..rest.len())
            .flat_map(|i| (i + 1..rest.len()).map(move |j| (i, j)))
            .find(|&(i, j)| dot(rest[i], rest[j]))?;
        let u = out.pop()?;
        let b = rest.remove(j);
        let a = rest.remove(i);
        for w in rest.iter_mut() {
            let (wa, wb) = (dot(*w, a), dot(*w, b));
            if wb {
                *w ^= a;
            }
            if wa {
                *w ^= b;
            }
        }
        out.extend([u ^ a, u ^ b, u ^ a ^ b]);
    }
    Some(out)
}

impl WiretapCode {
    /// Coset code over `base`, with `H` taken from the dual code.
    ///
    /// When the dual admits a basis with `H·Hᵀ = I` (which also makes `H`
    /// complete `G` to a full basis), that basis serves as both `G'` and `H`
    /// and the syndrome equals the message. Otherwise `G'` is the standard
    /// basis completion of `G` and decoding goes through a syndrome map.
    pub fn build(base: &LinearCode) -> Result<Self> {
        Self::build_with_limits(base, Limits::default())
    }

    pub fn build_with_limits(base: &LinearCode, limits: Limits) -> Result<Self> {
        let mut w = Self::assemble(base, None, limits)?;
        if w.n <= limits.ghw_exact {
            let profile = codes::ghw_exact(&base.dual(), limits.ghw_exact)?;
            w.dual_ghw = Some((profile, GhwSource::ExactSearch));
        }
        Ok(w)
    }

    /// Coset code with an explicitly chosen parity-check matrix, whose rows
    /// must form a basis of the dual of `base`.
    pub fn build_with_parity(base: &LinearCode, h: &BitMatrix) -> Result<Self> {
        let limits = Limits::default();
        let mut w = Self::assemble(base, Some(h), limits)?;
        if w.n <= limits.ghw_exact {
            let profile = codes::ghw_exact(&base.dual(), limits.ghw_exact)?;
            w.dual_ghw = Some((profile, GhwSource::ExactSearch));
        }
        Ok(w)
    }

    /// Coset code built from RM(`order`, `degree`) in the given role, with the
    /// dual-code GHWs taken from the Reed–Muller profile.
    pub fn from_reed_muller(order: usize, degree: usize, role: RmRole) -> Result<Self> {
        if degree < 1 || order >= degree {
            return Err(Error::ReedMullerParameters { order, degree });
        }
        let complement = degree - order - 1;
        let (base_order, dual_order, label) = match role {
            RmRole::Code => (order, complement, format!("RM({order},{degree})")),
            RmRole::Dual => (complement, order, format!("RM({order},{degree})-dual")),
        };
        let base = codes::reed_muller(base_order, degree)?;
        let mut w = Self::assemble(&base, None, Limits::default())?;
        w.label = label;
        w.dual_ghw = Some(codes::ghw_reed_muller(dual_order, degree)?);
        Ok(w)
    }

    fn assemble(base: &LinearCode, h: Option<&BitMatrix>, limits: Limits) -> Result<Self> {
        let n = base.n();
        let dim = base.dim();
        if dim == 0 || dim >= n {
            return Err(Error::DegenerateCode { dim, n });
        }
        if n > Word::MAX_LEN {
            return Err(Error::TooLarge {
                what: "blocklength",
                size: n,
                cap: Word::MAX_LEN,
            });
        }
        let k = n - dim;
        let g = base.generator();
        let h0 = match h {
            Some(h) => {
                if h.cols() != n || h.rows() != k || h.rank() != k || !g.mul(&h.transpose())?.is_zero() {
                    return Err(Error::BadParityCheck);
                }
                h.clone()
            }
            None => base.dual().generator().clone(),
        };
        let h0_rows: Vec<u64> = h0.row_words().iter().map(Word::bits).collect();
        let identity_h = if h.is_some() {
            // Keep a caller-supplied H verbatim when it already works.
            let hht = h0.mul(&h0.transpose())?;
            (hht == BitMatrix::identity(k)).then(|| h0_rows.clone())
        } else {
            orthonormal_basis(&h0_rows)
        };

        let (gprime, h, syndrome_map) = match identity_h {
            Some(rows) => {
                let words: Vec<Word> = rows.iter().map(|&b| Word::new(n, b)).collect();
                let hm = BitMatrix::from_words(&words, n)?;
                (hm.clone(), hm, SyndromeMap::Identity)
            }
            None => {
                let gprime = g.complete_basis()?;
                let a = gprime.mul(&h0.transpose())?;
                let map = if k <= limits.lookup_bits {
                    let mut table = vec![0u64; 1usize << k];
                    for v in 0..1u64 << k {
                        let m = Word::new(k, v);
                        let s = a.left_mul_word(&m);
                        table[s.bits() as usize] = v;
                    }
                    SyndromeMap::Table(table)
                } else {
                    SyndromeMap::Linear(a.inverse().ok_or(Error::BadParityCheck)?)
                };
                (gprime, h0, map)
            }
        };
        debug_assert_eq!(gprime.vstack(g)?.rank(), n);

        let words = |m: &BitMatrix| -> Vec<u64> { m.row_words().iter().map(Word::bits).collect() };
        Ok(Self {
            gprime_rows: words(&gprime),
            g_rows: words(g),
            h_rows: words(&h),
            g_columns: g.column_words(),
            base: base.clone(),
            label: String::from(base.label()),
            gprime,
            h,
            n,
            k,
            syndrome_map,
            dual_ghw: None,
        })
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    /// Replaces the dual-code GHW profile, e.g. with a closed-form result.
    pub fn with_dual_ghw(mut self, profile: GhwProfile, source: GhwSource) -> Self {
        self.dual_ghw = Some((profile, source));
        self
    }

    pub fn base_code(&self) -> &LinearCode {
        &self.base
    }

    pub fn gprime(&self) -> &BitMatrix {
        &self.gprime
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn rate(&self) -> f64 {
        self.k as f64 / self.n as f64
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    /// Whether the syndrome itself is the message (`G'·Hᵀ = I`).
    pub fn syndrome_is_message(&self) -> bool {
        self.syndrome_map == SyndromeMap::Identity
    }

    pub fn dual_ghw(&self) -> Option<(&GhwProfile, GhwSource)> {
        self.dual_ghw.as_ref().map(|(p, s)| (p, *s))
    }

    pub fn encode(&self, message: &Word, auxiliary: &Word) -> Result<Word> {
        check_len(message, self.k)?;
        check_len(auxiliary, self.n - self.k)?;
        Ok(Word::new(
            self.n,
            self.message_part(message.bits()) ^ self.auxiliary_part(auxiliary.bits()),
        ))
    }

    fn message_part(&self, m: u64) -> u64 {
        combine(&self.gprime_rows, m)
    }

    fn auxiliary_part(&self, a: u64) -> u64 {
        combine(&self.g_rows, a)
    }

    pub fn syndrome(&self, y: &Word) -> Result<Word> {
        check_len(y, self.n)?;
        let bits = self
            .h_rows
            .iter()
            .enumerate()
            .fold(0, |acc, (i, &h)| acc | (u64::from(dot(y.bits(), h)) << i));
        Ok(Word::new(self.k, bits))
    }

    pub fn decode(&self, y: &Word) -> Result<Word> {
        let s = self.syndrome(y)?;
        Ok(match &self.syndrome_map {
            SyndromeMap::Identity => s,
            SyndromeMap::Table(t) => Word::new(self.k, t[s.bits() as usize]),
            SyndromeMap::Linear(inv) => inv.left_mul_word(&s),
        })
    }

    /// Bits of the message revealed by observing the positions in `pattern`.
    pub fn leakage(&self, pattern: &ErasurePattern) -> usize {
        self.leakage_mask(pattern.mask)
    }

    fn leakage_mask(&self, revealed: u64) -> usize {
        let mut basis = crate::bitmatrix::WordBasis::new();
        let mut mu = 0;
        let mut bits = revealed;
        while bits != 0 {
            let j = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            mu += 1;
            basis.push(self.g_columns[j]);
        }
        mu - basis.rank()
    }

    /// Exact posterior over messages given an observation, by enumerating
    /// every `(m, m')` pair.
    pub fn posterior_oracle(&self, z: &Observation, cap: usize) -> Result<Posterior> {
        if self.n > cap {
            return Err(Error::TooLarge {
                what: "blocklength for the posterior oracle",
                size: self.n,
                cap,
            });
        }
        if z.len != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                found: z.len,
            });
        }
        let aux: Vec<u64> = (0..1u64 << (self.n - self.k))
            .map(|a| self.auxiliary_part(a) & z.revealed)
            .collect();
        let mut counts = vec![0u64; 1usize << self.k];
        for m in 0..1u64 << self.k {
            let base = self.message_part(m) & z.revealed;
            let hits = aux.iter().filter(|&&a| base ^ a == z.values).count() as u64;
            let msg = Word::new(self.k, m);
            counts[msg.msb_value() as usize] = hits;
        }
        let total: u64 = counts.iter().sum();
        if total == 0 {
            return Err(Error::InconsistentObservation);
        }
        Ok(Posterior {
            k: self.k,
            counts,
            total,
        })
    }

    /// Number of patterns of each equivocation level among all
    /// `C(n, mu)` ways of revealing `mu` positions; index `e` of the result
    /// counts patterns leaving `e` bits of equivocation.
    pub fn equivocation_column(&self, mu: usize) -> Vec<u64> {
        let mut column = vec![0u64; self.k + 1];
        if mu <= self.n {
            subsets::for_each_nullity(&self.g_columns, mu, |leak| column[self.k - leak] += 1);
        }
        column
    }

    pub fn equivocation_matrix(&self, cap: usize) -> Result<EquivocationMatrix> {
        if self.n > cap {
            return Err(Error::TooLarge {
                what: "blocklength for pattern enumeration",
                size: self.n,
                cap,
            });
        }
        let columns: Vec<Vec<u64>> = (0..=self.n).map(|mu| self.equivocation_column(mu)).collect();
        let counts = (0..=self.k).map(|e| columns.iter().map(|c| c[e]).collect()).collect();
        Ok(EquivocationMatrix {
            n: self.n,
            k: self.k,
            counts,
        })
    }

    /// Largest leakage over all patterns revealing `mu` positions, from the
    /// generalized Hamming weights of the dual code.
    pub fn worst_case_leakage(&self, mu: usize) -> Result<usize> {
        let (profile, _) = self.dual_ghw.as_ref().ok_or(Error::GhwUnavailable)?;
        Ok(profile.count_at_most(mu))
    }
}

fn combine(rows: &[u64], selector: u64) -> u64 {
    rows.iter()
        .enumerate()
        .filter(|(i, _)| (selector >> i) & 1 == 1)
        .fold(0, |acc, (_, r)| acc ^ r)
}

fn check_len(w: &Word, expected: usize) -> Result<()> {
    if w.len() == expected {
        Ok(())
    } else {
        Err(Error::LengthMismatch {
            expected,
            found: w.len(),
        })
    }
}

/// Positions of a codeword that the eavesdropper receives unerased.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErasurePattern {
    n: usize,
    mask: u64,
}

impl ErasurePattern {
    pub fn new(n: usize, revealed: &[usize]) -> Result<Self> {
        if n > Word::MAX_LEN {
            return Err(Error::TooLarge {
                what: "blocklength",
                size: n,
                cap: Word::MAX_LEN,
            });
        }
        let mut mask = 0u64;
        for &i in revealed {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, len: n });
            }
            if mask & (1 << i) != 0 {
                return Err(Error::DuplicateIndex(i));
            }
            mask |= 1 << i;
        }
        Ok(Self { n, mask })
    }

    /// Pattern from a packed mask, position `i` at bit `i`.
    pub fn from_mask(n: usize, mask: u64) -> Self {
        Self {
            n,
            mask: mask & low_mask(n),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    /// Number of revealed positions.
    pub fn mu(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn revealed(&self) -> Vec<usize> {
        (0..self.n).filter(|i| self.mask >> i & 1 == 1).collect()
    }
}

/// An eavesdropper observation over `{0, 1, ?}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Observation {
    len: usize,
    revealed: u64,
    values: u64,
}

impl Observation {
    pub fn new(codeword: &Word, pattern: &ErasurePattern) -> Self {
        Self {
            len: codeword.len(),
            revealed: pattern.mask,
            values: codeword.bits() & pattern.mask,
        }
    }

    /// Parses strings such as `"?00?"`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.len() > Word::MAX_LEN {
            return Err(Error::InvalidBits(s.into()));
        }
        let (mut revealed, mut values) = (0u64, 0u64);
        for (i, c) in s.chars().enumerate() {
            match c {
                '?' => {}
                '0' => revealed |= 1 << i,
                '1' => {
                    revealed |= 1 << i;
                    values |= 1 << i;
                }
                _ => return Err(Error::InvalidBits(s.into())),
            }
        }
        Ok(Self {
            len: s.len(),
            revealed,
            values,
        })
    }

    pub fn pattern(&self) -> ErasurePattern {
        ErasurePattern {
            n: self.len,
            mask: self.revealed,
        }
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            let c = match (self.revealed >> i & 1, self.values >> i & 1) {
                (0, _) => "?",
                (_, 0) => "0",
                _ => "1",
            };
            f.write_str(c)?;
        }
        Ok(())
    }
}

/// Posterior over messages, stored as consistent-pair counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Posterior {
    k: usize,
    /// Indexed by the message read as a binary number, first symbol most
    /// significant.
    counts: Vec<u64>,
    total: u64,
}

impl Posterior {
    pub fn probability(&self, message: &Word) -> f64 {
        assert_eq!(message.len(), self.k);
        self.counts[message.msb_value() as usize] as f64 / self.total as f64
    }

    /// Messages with nonzero probability, in table order.
    pub fn support(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .map(|(v, &c)| (Word::from_msb_value(self.k, v as u64), c as f64 / self.total as f64))
    }

    /// Shannon entropy in bits.
    pub fn entropy_bits(&self) -> f64 {
        self.counts
            .iter()
            .filter(|&&c| c > 0)
            .map(|&c| {
                let p = c as f64 / self.total as f64;
                -p * libm::log2(p)
            })
            .sum()
    }

    /// The equivocation as a whole number of bits, when the posterior is
    /// uniform on a power-of-two support.
    pub fn equivocation_bits(&self) -> Option<usize> {
        let nonzero: Vec<u64> = self.counts.iter().copied().filter(|&c| c > 0).collect();
        let first = *nonzero.first()?;
        let uniform = nonzero.iter().all(|&c| c == first);
        let size = nonzero.len();
        (uniform && size.is_power_of_two()).then(|| size.trailing_zeros() as usize)
    }
}

/// Counts of erasure patterns by (equivocation bits, revealed positions).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivocationMatrix {
    n: usize,
    k: usize,
    /// `counts[e][mu]`.
    counts: Vec<Vec<u64>>,
}

impl EquivocationMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn count(&self, equivocation: usize, mu: usize) -> u64 {
        self.counts[equivocation][mu]
    }

    /// Rows ordered from full equivocation down to zero, as `(e, counts by mu)`.
    pub fn rows_descending(&self) -> impl Iterator<Item = (usize, &[u64])> {
        (0..=self.k).rev().map(|e| (e, self.counts[e].as_slice()))
    }

    pub fn column_sum(&self, mu: usize) -> u64 {
        self.counts.iter().map(|row| row[mu]).sum()
    }

    /// Largest leakage among patterns with `mu` revealed positions.
    pub fn max_leakage(&self, mu: usize) -> usize {
        let min_e = (0..=self.k).find(|&e| self.counts[e][mu] > 0).unwrap_or(self.k);
        self.k - min_e
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn table_one() -> WiretapCode {
        let c = LinearCode::new(BitMatrix::from_bitstrings(&["0111", "1110"], 4).unwrap(), "table-I").unwrap();
        WiretapCode::build(&c).unwrap()
    }

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    #[test]
    fn build_recovers_orthonormal_parity_check() {
        let code = table_one();
        assert_eq!(code.k(), 2);
        assert!(code.syndrome_is_message());
        assert_eq!(code.gprime().to_bitstrings(), ["1101", "1011"]);
        assert_eq!(code.parity_check().to_bitstrings(), ["1101", "1011"]);
    }

    #[test]
    fn build_repetition_base() {
        let c = codes::reed_muller(0, 2).unwrap();
        let code = WiretapCode::build(&c).unwrap();
        assert_eq!(code.k(), 3);
        let even = LinearCode::from_spanning(code.parity_check(), "h");
        let expected = LinearCode::new(
            BitMatrix::from_bitstrings(&["1100", "0110", "0011"], 4).unwrap(),
            "even",
        )
        .unwrap();
        assert!(even.same_codewords(&expected));
        assert!(!code.syndrome_is_message());
    }

    #[test]
    fn build_rejects_degenerate() {
        assert_eq!(
            WiretapCode::build(&LinearCode::full_space(4)).unwrap_err(),
            Error::DegenerateCode { dim: 4, n: 4 }
        );
        assert!(WiretapCode::build(&LinearCode::zero_code(4)).is_err());
    }

    #[test]
    fn encode_examples() {
        let code = table_one();
        assert_eq!(code.encode(&w("10"), &w("01")).unwrap().to_string(), "0011");
        assert_eq!(code.encode(&w("00"), &w("00")).unwrap().to_string(), "0000");
        assert_eq!(code.encode(&w("11"), &w("11")).unwrap().to_string(), "1111");
        assert_eq!(
            code.encode(&w("1"), &w("00")).unwrap_err(),
            Error::LengthMismatch { expected: 2, found: 1 }
        );
    }

    #[test]
    fn decode_examples() {
        let code = table_one();
        assert_eq!(code.decode(&w("1011")).unwrap().to_string(), "01");
        assert_eq!(code.decode(&w("0000")).unwrap().to_string(), "00");
        assert_eq!(code.decode(&w("1111")).unwrap().to_string(), "11");
    }

    #[test]
    fn leakage_examples() {
        let code = table_one();
        let p = |r: &[usize]| ErasurePattern::new(4, r).unwrap();
        assert_eq!(code.leakage(&p(&[1, 2])), 1);
        assert_eq!(code.leakage(&p(&[])), 0);
        assert_eq!(code.leakage(&p(&[0, 1, 2, 3])), 2);
        assert!(ErasurePattern::new(4, &[4]).is_err());
        assert!(ErasurePattern::new(4, &[1, 1]).is_err());
    }

    #[test]
    fn posterior_examples() {
        let code = table_one();
        let post = code.posterior_oracle(&Observation::parse("?00?").unwrap(), 16).unwrap();
        let support: Vec<_> = post.support().map(|(m, p)| (m.to_string(), p)).collect();
        assert_eq!(support, [("00".to_string(), 0.5), ("11".to_string(), 0.5)]);
        assert_eq!(post.equivocation_bits(), Some(1));

        let post = code.posterior_oracle(&Observation::parse("????").unwrap(), 16).unwrap();
        assert_eq!(post.support().count(), 4);
        assert!((post.entropy_bits() - 2.0).abs() < 1e-12);

        let post = code.posterior_oracle(&Observation::parse("1011").unwrap(), 16).unwrap();
        assert_eq!(post.probability(&w("01")), 1.0);
        assert_eq!(post.entropy_bits(), 0.0);
    }

    #[test]
    fn posterior_rejects_bad_input() {
        let code = table_one();
        assert_eq!(
            code.posterior_oracle(&Observation::parse("???").unwrap(), 16)
                .unwrap_err(),
            Error::LengthMismatch { expected: 4, found: 3 }
        );
        assert!(matches!(
            code.posterior_oracle(&Observation::parse("????").unwrap(), 3),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn equivocation_matrix_table_two() {
        let m = table_one().equivocation_matrix(24).unwrap();
        let rows: Vec<(usize, Vec<u64>)> = m.rows_descending().map(|(e, r)| (e, r.to_vec())).collect();
        assert_eq!(
            rows,
            [
                (2, vec![1, 4, 5, 0, 0]),
                (1, vec![0, 0, 1, 4, 0]),
                (0, vec![0, 0, 0, 0, 1])
            ]
        );
    }

    #[test]
    fn equivocation_matrix_repetition_base() {
        // C = {0000, 1111}; every nonempty G_R has rank one, so μ revealed
        // positions leak μ - 1 bits.
        let code = WiretapCode::build(&codes::reed_muller(0, 2).unwrap()).unwrap();
        let m = code.equivocation_matrix(24).unwrap();
        for mu in 0..=4 {
            assert_eq!(m.column_sum(mu), codes::binomial(4, mu));
        }
        // Brute-force oracle: for each subset, count distinct messages
        // consistent with the all-zero observation on that subset.
        for mask in 0u64..16 {
            let z = Observation::new(&Word::zero(4), &ErasurePattern::from_mask(4, mask));
            let post = code.posterior_oracle(&z, 16).unwrap();
            let e = post.equivocation_bits().unwrap();
            assert_eq!(e, 3 - code.leakage(&z.pattern()));
        }
        assert_eq!(m.count(3, 0), 1);
        assert_eq!(m.count(3, 1), 4);
        assert_eq!(m.count(2, 2), 6);
        assert_eq!(m.count(1, 3), 4);
        assert_eq!(m.count(0, 4), 1);
    }

    #[test]
    fn worst_case_examples() {
        let code = table_one();
        assert_eq!(code.worst_case_leakage(2).unwrap(), 1);
        assert_eq!(code.worst_case_leakage(0).unwrap(), 0);
        assert_eq!(code.worst_case_leakage(3).unwrap(), 1);
        assert_eq!(code.worst_case_leakage(4).unwrap(), 2);
    }

    #[test]
    fn reed_muller_roles() {
        let c = WiretapCode::from_reed_muller(1, 2, RmRole::Code).unwrap();
        assert_eq!((c.n(), c.k(), c.label()), (4, 1, "RM(1,2)"));
        let d = WiretapCode::from_reed_muller(1, 2, RmRole::Dual).unwrap();
        assert_eq!((d.n(), d.k(), d.label()), (4, 3, "RM(1,2)-dual"));
        assert_eq!(d.rate(), 0.75);
        assert!(WiretapCode::from_reed_muller(2, 2, RmRole::Code).is_err());
    }

    #[test]
    fn large_message_uses_linear_map() {
        let code = WiretapCode::from_reed_muller(4, 5, RmRole::Dual).unwrap();
        assert_eq!(code.k(), 31);
        let m = Word::new(31, 0x5555_1234);
        let x = code.encode(&m, &Word::new(1, 1)).unwrap();
        assert_eq!(code.decode(&x).unwrap(), m);
    }
}
