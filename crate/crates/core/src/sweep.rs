//! Secure-throughput sweep over wiretap codes and erasure thresholds.
//!
//! For a threshold `tau`, Bob's reference location (the best-capacity cell of
//! his region) defines the active carriers: those with SNR at least `tau`.
//! Throughput is `k/n` times the active count. Each eavesdropper location
//! reads `e` of the active carriers; a block of `n` bits spread over distinct
//! carriers then reveals at most `min(n, e)` positions to her, and the
//! equivocation of the worst location is reported as a percentage of `k`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::channel::{ChannelGrid, RegionMap};
use crate::wiretap::{ErasurePattern, Observation, RmRole, WiretapCode};
use crate::{seed, Error, Result, Word};

/// How codeword bits of one block are placed on the active carriers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum BlockMapping {
    /// Assume up to `n` of the eavesdropper's readable carriers land in the
    /// same block: `μ = min(n, e)`.
    #[default]
    Adversarial,
    /// Active carrier slot `p` carries block `p mod B` with
    /// `B = ⌈active / n⌉`; `μ` is the largest per-block readable count.
    RoundRobin,
}

/// One (code, threshold) evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub code_label: String,
    pub n: usize,
    pub k: usize,
    pub rate: f64,
    pub tau_db: f64,
    pub active_carriers: usize,
    pub throughput: f64,
    pub min_equivocation_pct: f64,
    pub worst_eve_location: usize,
}

impl SweepPoint {
    /// `false` when Bob has no usable carrier at this threshold.
    pub fn is_reliable(&self) -> bool {
        self.active_carriers > 0
    }

    /// No eavesdropper location learns anything.
    pub fn is_fully_secure(&self) -> bool {
        self.min_equivocation_pct == 100.0
    }

    /// `k · active`, which equals `throughput · n`.
    pub fn throughput_numerator(&self) -> u128 {
        (self.k as u128) * (self.active_carriers as u128)
    }

    /// Exact throughput comparison by cross-multiplication.
    fn cmp_throughput(&self, other: &Self) -> Ordering {
        (self.throughput_numerator() * other.n as u128).cmp(&(other.throughput_numerator() * self.n as u128))
    }
}

/// Carrier indices at which `snrs` meets the threshold.
pub fn active_carriers(snrs: &[f64], tau: f64) -> Vec<usize> {
    (0..snrs.len()).filter(|&i| snrs[i] >= tau).collect()
}

/// Revealed positions per block for an eavesdropper whose readable flags over
/// the active carriers are `readable`.
pub fn block_mu(readable: &[bool], n: usize, mapping: BlockMapping) -> usize {
    let e = readable.iter().filter(|&&r| r).count();
    match mapping {
        BlockMapping::Adversarial => e.min(n),
        BlockMapping::RoundRobin => {
            let blocks = readable.len().div_ceil(n).max(1);
            let mut per_block = alloc::vec![0usize; blocks];
            for (p, _) in readable.iter().enumerate().filter(|(_, &r)| r) {
                per_block[p % blocks] += 1;
            }
            per_block.into_iter().max().unwrap_or(0).min(n)
        }
    }
}

struct Scenario {
    bob: usize,
    eves: Vec<usize>,
}

impl Scenario {
    fn new(grid: &ChannelGrid, regions: &RegionMap) -> Result<Self> {
        let eves = regions.eve_locations(grid)?;
        let bob = grid.best_location(&regions.bob_region)?;
        Ok(Self { bob, eves })
    }

    fn readable(&self, grid: &ChannelGrid, eve: usize, active: &[usize], tau: f64) -> Vec<bool> {
        let snr = grid.snr(eve);
        active.iter().map(|&c| snr[c] >= tau).collect()
    }
}

/// Evaluates one code at one threshold.
pub fn evaluate(
    code: &WiretapCode,
    grid: &ChannelGrid,
    regions: &RegionMap,
    tau: f64,
    mapping: BlockMapping,
) -> Result<SweepPoint> {
    let scenario = Scenario::new(grid, regions)?;
    evaluate_in(code, grid, &scenario, tau, mapping)
}

fn evaluate_in(
    code: &WiretapCode,
    grid: &ChannelGrid,
    scenario: &Scenario,
    tau: f64,
    mapping: BlockMapping,
) -> Result<SweepPoint> {
    let (n, k) = (code.n(), code.k());
    let active = active_carriers(grid.snr(scenario.bob), tau);
    let mut worst: Option<(usize, usize)> = None;
    for &eve in &scenario.eves {
        let mu = block_mu(&scenario.readable(grid, eve, &active, tau), n, mapping);
        let leak = code.worst_case_leakage(mu)?;
        if worst.is_none_or(|(_, l)| leak > l) {
            worst = Some((eve, leak));
        }
    }
    let (worst_eve_location, leak) = worst.ok_or(Error::NoEveRegions)?;
    Ok(SweepPoint {
        code_label: code.label().into(),
        n,
        k,
        rate: code.rate(),
        tau_db: tau,
        active_carriers: active.len(),
        throughput: (k * active.len()) as f64 / n as f64,
        min_equivocation_pct: 100.0 * (k - leak) as f64 / k as f64,
        worst_eve_location,
    })
}

/// Every code at every threshold, code-major. A failing point is reported in
/// place without stopping the rest.
pub fn sweep(
    codes: &[WiretapCode],
    grid: &ChannelGrid,
    regions: &RegionMap,
    taus: &[f64],
    mapping: BlockMapping,
) -> Result<Vec<Result<SweepPoint>>> {
    if codes.is_empty() {
        return Err(Error::Empty("code list"));
    }
    if taus.is_empty() {
        return Err(Error::Empty("threshold list"));
    }
    let scenario = Scenario::new(grid, regions);
    Ok(codes
        .iter()
        .flat_map(|code| taus.iter().map(move |&tau| (code, tau)))
        .map(|(code, tau)| match &scenario {
            Ok(s) => evaluate_in(code, grid, s, tau, mapping),
            Err(e) => Err(e.clone()),
        })
        .collect())
}

/// Highest-throughput point, optionally restricted to points with full
/// equivocation. Points without active carriers are never selected. Ties go
/// to the shorter code, then the lower threshold.
pub fn select_best(points: &[SweepPoint], require_full_equivocation: bool) -> Result<SweepPoint> {
    if points.is_empty() {
        return Err(Error::Empty("sweep points"));
    }
    points
        .iter()
        .filter(|p| p.is_reliable())
        .filter(|p| !require_full_equivocation || p.is_fully_secure())
        .max_by(|a, b| {
            a.cmp_throughput(b)
                .then(b.n.cmp(&a.n))
                .then(b.tau_db.total_cmp(&a.tau_db))
                .then(b.code_label.cmp(&a.code_label))
                .then(b.k.cmp(&a.k))
        })
        .cloned()
        .ok_or(Error::NoSecurePoint)
}

/// RM(u, m) for `1 ≤ m ≤ max_degree`, `1 ≤ u < m`, in each requested role.
///
/// `u = m` is left out: RM(m, m) is the whole space, which leaves no room for
/// a message in either role.
pub fn rm_family(max_degree: usize, roles: &[RmRole]) -> Result<Vec<WiretapCode>> {
    let mut out = Vec::new();
    for m in 1..=max_degree {
        for u in 1..m {
            for &role in roles {
                out.push(WiretapCode::from_reed_muller(u, m, role)?);
            }
        }
    }
    Ok(out)
}

/// Outcome of a Monte Carlo run.
#[derive(Debug, Clone, PartialEq)]
pub struct McReport {
    pub trials: usize,
    pub bob_errors: usize,
    pub bob_error_rate: f64,
    pub eve_leakage_bits_mean: f64,
    pub eve_leakage_bits_max: f64,
    /// Largest revealed-position count any trial could see.
    pub mu_star: usize,
    /// `worst_case_leakage(mu_star)`.
    pub worst_case_bound: usize,
}

fn uniform_index(rng: &mut ChaCha8Rng, len: usize) -> usize {
    ((u128::from(rng.next_u64()) * len as u128) >> 64) as usize
}

fn random_word(rng: &mut ChaCha8Rng, len: usize) -> Word {
    Word::new(len, rng.next_u64())
}

/// Monte Carlo over explicit eavesdropper patterns: each trial draws a
/// uniform `(m, m')`, encodes, checks Bob's decode, and measures Eve's
/// leakage `k - H(M | z)` from the brute-force posterior for one uniformly
/// drawn pattern.
pub fn simulate_patterns(
    code: &WiretapCode,
    patterns: &[ErasurePattern],
    trials: usize,
    seed: u64,
    oracle_cap: usize,
) -> Result<McReport> {
    if trials == 0 {
        return Err(Error::Empty("trials"));
    }
    if patterns.is_empty() {
        return Err(Error::Empty("erasure patterns"));
    }
    if code.n() > oracle_cap {
        return Err(Error::TooLarge {
            what: "blocklength for the posterior oracle",
            size: code.n(),
            cap: oracle_cap,
        });
    }
    let (n, k) = (code.n(), code.k());
    let mu_star = patterns.iter().map(ErasurePattern::mu).max().unwrap_or(0);
    let worst_case_bound = code.worst_case_leakage(mu_star)?;

    let mut entropy_cache: BTreeMap<(u64, u64), f64> = BTreeMap::new();
    let mut bob_errors = 0;
    let (mut sum, mut max) = (0.0f64, 0.0f64);
    for t in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(seed, t as u64));
        let pattern = patterns[uniform_index(&mut rng, patterns.len())];
        let m = random_word(&mut rng, k);
        let aux = random_word(&mut rng, n - k);
        let x = code.encode(&m, &aux)?;
        if code.decode(&x)? != m {
            bob_errors += 1;
        }
        let z = Observation::new(&x, &pattern);
        let key = (pattern.mask(), x.bits() & pattern.mask());
        let entropy = match entropy_cache.get(&key) {
            Some(&h) => h,
            None => {
                let h = code.posterior_oracle(&z, oracle_cap)?.entropy_bits();
                entropy_cache.insert(key, h);
                h
            }
        };
        let leak = (k as f64 - entropy).max(0.0);
        sum += leak;
        max = max.max(leak);
    }
    Ok(McReport {
        trials,
        bob_errors,
        bob_error_rate: bob_errors as f64 / trials as f64,
        eve_leakage_bits_mean: sum / trials as f64,
        eve_leakage_bits_max: max,
        mu_star,
        worst_case_bound,
    })
}

/// Erasure patterns an eavesdropper at each location sees when consecutive
/// blocks are laid contiguously over the active carriers, for every block
/// start offset.
pub fn grid_patterns(
    code: &WiretapCode,
    grid: &ChannelGrid,
    regions: &RegionMap,
    tau: f64,
) -> Result<Vec<ErasurePattern>> {
    let scenario = Scenario::new(grid, regions)?;
    let active = active_carriers(grid.snr(scenario.bob), tau);
    let n = code.n();
    if active.len() < n {
        return Err(Error::BlockExceedsCarriers {
            n,
            active: active.len(),
        });
    }
    let a = active.len();
    let mut out = Vec::with_capacity(scenario.eves.len() * a);
    for &eve in &scenario.eves {
        let readable = scenario.readable(grid, eve, &active, tau);
        for offset in 0..a {
            let mask = (0..n)
                .filter(|p| readable[(offset + p) % a])
                .fold(0u64, |m, p| m | 1 << p);
            out.push(ErasurePattern::from_mask(n, mask));
        }
    }
    Ok(out)
}

/// End-to-end Monte Carlo on a grid at threshold `tau`.
///
/// Bob receives the block error-free on his active carriers. Each trial picks
/// an eavesdropper location and block offset uniformly. Blocks must fit on
/// distinct active carriers, so `n` may not exceed the active count.
pub fn simulate_mc(
    code: &WiretapCode,
    grid: &ChannelGrid,
    regions: &RegionMap,
    tau: f64,
    trials: usize,
    seed: u64,
    oracle_cap: usize,
) -> Result<McReport> {
    let patterns = grid_patterns(code, grid, regions, tau)?;
    simulate_patterns(code, &patterns, trials, seed, oracle_cap)
}
