//! Threshold erasure model, per-subcarrier capacity, and the location grid.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use crate::{Error, Result};

/// Subcarriers in the sounding waveform.
pub const SUBCARRIERS: usize = 64;

/// Per-location SNRs in dB, one per subcarrier.
pub type SnrProfile = [f64; SUBCARRIERS];

pub fn db_to_linear(db: f64) -> f64 {
    libm::pow(10.0, db / 10.0)
}

/// `½·log2(1 + SNR)` in bits per channel use. `-∞` dB contributes nothing.
pub fn subcarrier_capacity(snr_db: f64) -> f64 {
    0.5 * libm::log2(1.0 + db_to_linear(snr_db))
}

/// `true` where the symbol is received, `false` where it is erased. A value
/// equal to `tau` is received.
pub fn erase_mask(snrs: &[f64], tau: f64) -> Vec<bool> {
    snrs.iter().map(|&s| s >= tau).collect()
}

/// Number of subcarriers with SNR at least `tau`.
pub fn reliable_count(snrs: &[f64], tau: f64) -> usize {
    snrs.iter().filter(|&&s| s >= tau).count()
}

/// Sum capacity of parallel Gaussian subchannels sharing one noise level.
pub fn capacity_sum(snrs: &[f64]) -> f64 {
    snrs.iter().map(|&s| subcarrier_capacity(s)).sum()
}

/// Sum of the positive per-subcarrier capacity advantages of Bob over Eve.
///
/// # Panics
///
/// Panics if the profiles have different lengths.
pub fn secrecy_capacity(bob: &[f64], eve: &[f64]) -> f64 {
    assert_eq!(bob.len(), eve.len(), "profiles must cover the same subcarriers");
    bob.iter()
        .zip(eve)
        .map(|(&b, &e)| (subcarrier_capacity(b) - subcarrier_capacity(e)).max(0.0))
        .sum()
}

/// How a threshold enters a capacity map.
///
/// The raw map ignores the threshold. `Gate` zeroes subcarriers below it.
/// `PowerOffset` shifts every SNR by a transmit-power change in dB, the view
/// in which raising the threshold is the same as lowering power.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CapacityMode {
    Raw,
    Gate { tau_db: f64 },
    PowerOffset { db: f64 },
}

impl CapacityMode {
    pub fn apply(&self, snr_db: f64) -> f64 {
        match *self {
            CapacityMode::Raw => snr_db,
            CapacityMode::Gate { tau_db } if snr_db < tau_db => f64::NEG_INFINITY,
            CapacityMode::Gate { .. } => snr_db,
            CapacityMode::PowerOffset { db } => snr_db + db,
        }
    }

    pub fn profile(&self, snrs: &[f64]) -> Vec<f64> {
        snrs.iter().map(|&s| self.apply(s)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Location {
    pub x: f64,
    pub y: f64,
    pub region: String,
}

/// Per-location subcarrier SNRs over a floor plan.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelGrid {
    locations: Vec<Location>,
    snr_db: Vec<SnrProfile>,
    tx: Point,
    grid_spacing: f64,
}

impl ChannelGrid {
    pub fn new(locations: Vec<Location>, snr_db: Vec<SnrProfile>, tx: Point, grid_spacing: f64) -> Result<Self> {
        if locations.len() != snr_db.len() {
            return Err(Error::LengthMismatch {
                expected: locations.len(),
                found: snr_db.len(),
            });
        }
        if let Some(index) = snr_db.iter().position(|row| row.iter().any(|v| !v.is_finite())) {
            return Err(Error::NonFiniteSnr { index });
        }
        Ok(Self {
            locations,
            snr_db,
            tx,
            grid_spacing,
        })
    }

    /// Builds a grid from variable-length rows, checking each has
    /// [`SUBCARRIERS`] values.
    pub fn from_rows(locations: Vec<Location>, rows: Vec<Vec<f64>>, tx: Point, grid_spacing: f64) -> Result<Self> {
        let snr_db = rows
            .into_iter()
            .enumerate()
            .map(|(index, row)| {
                let found = row.len();
                <SnrProfile>::try_from(row).map_err(|_| Error::SubcarrierCount {
                    index,
                    expected: SUBCARRIERS,
                    found,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(locations, snr_db, tx, grid_spacing)
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    pub fn locations(&self) -> &[Location] {
        &self.locations
    }

    pub fn location(&self, i: usize) -> &Location {
        &self.locations[i]
    }

    pub fn snr(&self, i: usize) -> &SnrProfile {
        &self.snr_db[i]
    }

    pub fn tx(&self) -> Point {
        self.tx
    }

    pub fn grid_spacing(&self) -> f64 {
        self.grid_spacing
    }

    /// Region labels in first-seen order.
    pub fn regions(&self) -> Vec<&str> {
        let mut out: Vec<&str> = Vec::new();
        for l in &self.locations {
            if !out.contains(&l.region.as_str()) {
                out.push(&l.region);
            }
        }
        out
    }

    pub fn indices_in(&self, region: &str) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| self.locations[i].region == region)
            .collect()
    }

    pub fn capacity_map(&self, mode: CapacityMode) -> Vec<f64> {
        self.snr_db.iter().map(|row| capacity_sum(&mode.profile(row))).collect()
    }

    pub fn reliable_map(&self, tau: f64) -> Vec<usize> {
        self.snr_db.iter().map(|row| reliable_count(row, tau)).collect()
    }

    /// Secrecy capacity at every location, taking location `bob` as the
    /// legitimate receiver.
    pub fn secrecy_map(&self, bob: usize, mode: CapacityMode) -> Vec<f64> {
        let b = mode.profile(&self.snr_db[bob]);
        self.snr_db
            .iter()
            .map(|row| secrecy_capacity(&b, &mode.profile(row)))
            .collect()
    }

    /// Location in `region` with the largest sum capacity; ties go to the
    /// lowest index.
    pub fn best_location(&self, region: &str) -> Result<usize> {
        let mut best: Option<(usize, f64)> = None;
        for i in self.indices_in(region) {
            let c = capacity_sum(&self.snr_db[i]);
            if best.is_none_or(|(_, b)| c > b) {
                best = Some((i, c));
            }
        }
        best.map(|(i, _)| i).ok_or_else(|| Error::UnknownRegion(region.into()))
    }
}

/// Which regions hold the legitimate receiver and the potential eavesdroppers.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RegionMap {
    pub bob_region: String,
    pub eve_regions: BTreeSet<String>,
    pub excluded_regions: BTreeSet<String>,
}

impl RegionMap {
    pub fn new<I, S>(bob_region: impl Into<String>, eve_regions: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self {
            bob_region: bob_region.into(),
            eve_regions: eve_regions.into_iter().map(Into::into).collect(),
            excluded_regions: BTreeSet::new(),
        }
    }

    pub fn excluding<I, S>(mut self, regions: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.excluded_regions = regions.into_iter().map(Into::into).collect();
        self
    }

    /// Checks the map against a grid and returns the eavesdropper location
    /// indices in grid order.
    pub fn eve_locations(&self, grid: &ChannelGrid) -> Result<Vec<usize>> {
        if self.eve_regions.is_empty() {
            return Err(Error::NoEveRegions);
        }
        if self.eve_regions.contains(&self.bob_region) {
            return Err(Error::RegionOverlap(self.bob_region.clone()));
        }
        if let Some(r) = self.eve_regions.intersection(&self.excluded_regions).next() {
            return Err(Error::RegionOverlap(r.clone()));
        }
        if grid.indices_in(&self.bob_region).is_empty() {
            return Err(Error::UnknownRegion(self.bob_region.clone()));
        }
        for r in &self.eve_regions {
            if grid.indices_in(r).is_empty() {
                return Err(Error::UnknownRegion(r.clone()));
            }
        }
        Ok((0..grid.len())
            .filter(|&i| self.eve_regions.contains(&grid.location(i).region))
            .collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    const P3_DB: f64 = 4.771_212_547_196_624; // 10·log10(3)

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn erase_mask_examples() {
        assert!(erase_mask(&[30.0; 64], 25.0).iter().all(|&b| b));
        assert!(erase_mask(&[20.0; 64], 25.0).iter().all(|&b| !b));
        assert_eq!(erase_mask(&[25.0], 25.0), [true]);
    }

    #[test]
    fn reliable_count_examples() {
        assert_eq!(reliable_count(&[30.0; 64], 25.0), 64);
        assert_eq!(reliable_count(&[20.0; 64], 25.0), 0);
        let alt: Vec<f64> = (0..64).map(|i| if i % 2 == 0 { 30.0 } else { 20.0 }).collect();
        assert_eq!(reliable_count(&alt, 25.0), 32);
    }

    #[test]
    fn capacity_examples() {
        assert!(rel(capacity_sum(&[P3_DB; 64]), 64.0) < 1e-12);
        assert_eq!(capacity_sum(&[f64::NEG_INFINITY; 64]), 0.0);
        let mut one = [f64::NEG_INFINITY; 64];
        one[0] = 15.0;
        // ½·log2(1 + 10^1.5) evaluated independently.
        let expected = 0.5 * (1.0 + 31.622_776_601_683_793_f64).log2();
        assert!(rel(capacity_sum(&one), expected) < 1e-9);
        assert!(rel(capacity_sum(&one), 2.513_903_836_675_26) < 1e-9);
    }

    #[test]
    fn secrecy_examples() {
        let bob = [P3_DB; 64];
        assert_eq!(secrecy_capacity(&bob, &bob), 0.0);
        assert!(rel(secrecy_capacity(&bob, &[f64::NEG_INFINITY; 64]), 64.0) < 1e-12);
        let mut b = [f64::NEG_INFINITY; 64];
        let mut e = [f64::NEG_INFINITY; 64];
        b[0] = 15.0;
        e[0] = 5.0;
        let expected = 0.5 * ((1.0 + 31.622_776_601_683_793_f64).log2() - (1.0 + 3.162_277_660_168_379_f64).log2());
        assert!(rel(secrecy_capacity(&b, &e), expected) < 1e-9);
        assert!(rel(secrecy_capacity(&b, &e), 1.485_217_232_371_862) < 1e-9);
    }

    #[test]
    fn capacity_modes() {
        assert_eq!(CapacityMode::Gate { tau_db: 25.0 }.apply(24.9), f64::NEG_INFINITY);
        assert_eq!(CapacityMode::Gate { tau_db: 25.0 }.apply(25.0), 25.0);
        assert_eq!(CapacityMode::PowerOffset { db: -2.0 }.apply(25.0), 23.0);
    }

    fn grid() -> ChannelGrid {
        let loc = |x: f64, region: &str| Location {
            x,
            y: 0.0,
            region: region.into(),
        };
        ChannelGrid::new(
            vec![loc(0.0, "bob"), loc(1.0, "bob"), loc(2.0, "eve"), loc(3.0, "hall")],
            vec![[30.0; 64], [32.0; 64], [20.0; 64], [40.0; 64]],
            Point { x: 0.0, y: 0.0 },
            1.0,
        )
        .unwrap()
    }

    #[test]
    fn grid_queries() {
        let g = grid();
        assert_eq!(g.regions(), ["bob", "eve", "hall"]);
        assert_eq!(g.best_location("bob").unwrap(), 1);
        assert!(g.best_location("nowhere").is_err());
        assert_eq!(g.reliable_map(25.0), [64, 64, 0, 64]);
        assert_eq!(g.secrecy_map(1, CapacityMode::Raw)[1], 0.0);
    }

    #[test]
    fn grid_rejects_bad_rows() {
        let loc = Location {
            x: 0.0,
            y: 0.0,
            region: "a".into(),
        };
        let p = Point { x: 0.0, y: 0.0 };
        assert_eq!(
            ChannelGrid::from_rows(vec![loc.clone()], vec![vec![1.0; 63]], p, 1.0).unwrap_err(),
            Error::SubcarrierCount {
                index: 0,
                expected: 64,
                found: 63
            }
        );
        let mut row = [0.0; 64];
        row[5] = f64::NAN;
        assert_eq!(
            ChannelGrid::new(vec![loc], vec![row], p, 1.0).unwrap_err(),
            Error::NonFiniteSnr { index: 0 }
        );
    }

    #[test]
    fn region_map_validation() {
        let g = grid();
        assert_eq!(RegionMap::new("bob", ["eve"]).eve_locations(&g).unwrap(), [2]);
        assert_eq!(
            RegionMap::new("bob", Vec::<String>::new())
                .eve_locations(&g)
                .unwrap_err(),
            Error::NoEveRegions
        );
        assert!(RegionMap::new("bob", ["bob"]).eve_locations(&g).is_err());
        assert!(RegionMap::new("bob", ["attic"]).eve_locations(&g).is_err());
        assert!(RegionMap::new("bob", ["eve"])
            .excluding(["eve"])
            .eve_locations(&g)
            .is_err());
    }
}
