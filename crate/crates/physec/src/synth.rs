//! Synthetic indoor environments: log-distance path loss, wall attenuation
//! along the transmitter-receiver ray, and frequency-selective Rician
//! fading drawn per location.
//!
//! Geometry is two-dimensional. Antenna heights are carried as metadata.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use physec_core::{seed, ChannelGrid, Location, Point, SUBCARRIERS};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Rect {
    pub x0: f64,
    pub y0: f64,
    pub x1: f64,
    pub y1: f64,
}

impl Rect {
    /// Half-open containment, so adjacent rooms do not overlap.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        x >= self.x0 && x < self.x1 && y >= self.y0 && y < self.y1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Room {
    pub label: String,
    #[serde(flatten)]
    pub area: Rect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Wall {
    pub from: [f64; 2],
    pub to: [f64; 2],
    pub attenuation_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Fading {
    pub enabled: bool,
    /// Taps of the delay line, spaced one sample apart.
    pub taps: usize,
    pub rms_delay_spread_s: f64,
    /// Power ratio of the line-of-sight component to the scattered ones.
    pub rician_k_db: f64,
}

impl Default for Fading {
    fn default() -> Self {
        Self {
            enabled: false,
            taps: 8,
            rms_delay_spread_s: 50e-9,
            rician_k_db: 3.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExplicitLocation {
    pub x: f64,
    pub y: f64,
    pub region: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AntennaHeights {
    pub tx_m: f64,
    pub rx_m: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnvironmentConfig {
    pub floor: Rect,
    pub grid_spacing_m: f64,
    #[serde(default)]
    pub rooms: Vec<Room>,
    #[serde(default = "default_region")]
    pub default_region: String,
    #[serde(default)]
    pub walls: Vec<Wall>,
    pub tx: [f64; 2],
    /// Added to every SNR; models turning transmit power up or down.
    #[serde(default)]
    pub tx_power_offset_db: f64,
    /// SNR at the reference distance with no walls and no fading.
    pub reference_snr_db: f64,
    pub reference_distance_m: f64,
    pub path_loss_exponent: f64,
    #[serde(default)]
    pub fading: Fading,
    #[serde(default = "default_sample_rate")]
    pub sample_rate_hz: f64,
    /// Replaces the regular grid when present.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub locations: Option<Vec<ExplicitLocation>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antenna_heights: Option<AntennaHeights>,
}

fn default_region() -> String {
    "hallway".into()
}

fn default_sample_rate() -> f64 {
    20e6
}

impl EnvironmentConfig {
    pub fn validate(&self) -> Result<()> {
        let f = &self.floor;
        let bad = |m: &str| Err(Error::Environment(m.into()));
        if !(f.x1 > f.x0 && f.y1 > f.y0) {
            return bad("floor plan is empty");
        }
        if self.locations.as_ref().is_some_and(Vec::is_empty) {
            return bad("explicit location list is empty");
        }
        if self.locations.is_none() && !(self.grid_spacing_m > 0.0) {
            return bad("grid_spacing_m must be positive");
        }
        if !(self.reference_distance_m > 0.0) {
            return bad("reference_distance_m must be positive");
        }
        if self.fading.enabled && (self.fading.taps == 0 || !(self.sample_rate_hz > 0.0)) {
            return bad("fading needs at least one tap and a positive sample rate");
        }
        Ok(())
    }

    fn region_of(&self, x: f64, y: f64) -> String {
        self.rooms
            .iter()
            .find(|r| r.area.contains(x, y))
            .map_or_else(|| self.default_region.clone(), |r| r.label.clone())
    }

    /// Receiver positions in row-major order (y outer, x inner).
    pub fn positions(&self) -> Vec<Location> {
        if let Some(list) = &self.locations {
            return list
                .iter()
                .map(|l| Location {
                    x: l.x,
                    y: l.y,
                    region: l.region.clone(),
                })
                .collect();
        }
        let s = self.grid_spacing_m;
        let f = &self.floor;
        let count = |lo: f64, hi: f64| ((hi - lo) / s + 1e-9).floor() as usize;
        let (nx, ny) = (count(f.x0, f.x1), count(f.y0, f.y1));
        let mut out = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                let x = f.x0 + s * (i as f64 + 0.5);
                let y = f.y0 + s * (j as f64 + 0.5);
                out.push(Location {
                    x,
                    y,
                    region: self.region_of(x, y),
                });
            }
        }
        out
    }

    /// Large-scale SNR at `(x, y)`: reference SNR, power offset, path loss
    /// beyond the reference distance, and the walls the ray crosses.
    pub fn mean_snr_db(&self, x: f64, y: f64) -> f64 {
        let d = (x - self.tx[0]).hypot(y - self.tx[1]).max(self.reference_distance_m);
        let path = 10.0 * self.path_loss_exponent * (d / self.reference_distance_m).log10();
        let walls: f64 = self
            .walls
            .iter()
            .filter(|w| segments_cross(self.tx, [x, y], w.from, w.to))
            .map(|w| w.attenuation_db)
            .sum();
        self.reference_snr_db + self.tx_power_offset_db - path - walls
    }

    /// Per-subcarrier fading gain in dB (mean power one), from a tapped
    /// delay line with exponential power-delay profile and a Rician first
    /// tap.
    pub fn fading_db(&self, rng: &mut ChaCha8Rng) -> [f64; SUBCARRIERS] {
        let fd = &self.fading;
        let ts = 1.0 / self.sample_rate_hz;
        let mut powers: Vec<f64> = (0..fd.taps)
            .map(|l| {
                if fd.rms_delay_spread_s > 0.0 {
                    (-(l as f64) * ts / fd.rms_delay_spread_s).exp()
                } else if l == 0 {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        let total: f64 = powers.iter().sum();
        powers.iter_mut().for_each(|p| *p /= total);
        let k = 10f64.powf(fd.rician_k_db / 10.0);
        let taps: Vec<Complex<f64>> = powers
            .iter()
            .enumerate()
            .map(|(l, &p)| {
                let scatter = Complex::new(
                    rng.sample::<f64, _>(StandardNormal),
                    rng.sample::<f64, _>(StandardNormal),
                ) * (p / 2.0).sqrt();
                if l == 0 {
                    let phase = rng.random::<f64>() * std::f64::consts::TAU;
                    let los = Complex::from_polar((p * k / (k + 1.0)).sqrt(), phase);
                    los + scatter / (k + 1.0).sqrt()
                } else {
                    scatter
                }
            })
            .collect();
        // Subcarrier i sits on FFT bin 2i of a 2·SUBCARRIERS-point transform.
        let n = 2 * SUBCARRIERS;
        std::array::from_fn(|i| {
            let h: Complex<f64> = taps
                .iter()
                .enumerate()
                .map(|(l, t)| t * Complex::from_polar(1.0, -std::f64::consts::TAU * (2 * i * l) as f64 / n as f64))
                .sum();
            10.0 * h.norm_sqr().max(1e-12).log10()
        })
    }
}

fn orient(a: [f64; 2], b: [f64; 2], c: [f64; 2]) -> f64 {
    (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])
}

/// Whether segment `p1-p2` crosses segment `q1-q2`, counting touches.
pub fn segments_cross(p1: [f64; 2], p2: [f64; 2], q1: [f64; 2], q2: [f64; 2]) -> bool {
    let (d1, d2) = (orient(q1, q2, p1), orient(q1, q2, p2));
    let (d3, d4) = (orient(p1, p2, q1), orient(p1, p2, q2));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0)) && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0)) {
        return true;
    }
    let on = |a: [f64; 2], b: [f64; 2], c: [f64; 2], d: f64| {
        d == 0.0 && c[0] >= a[0].min(b[0]) && c[0] <= a[0].max(b[0]) && c[1] >= a[1].min(b[1]) && c[1] <= a[1].max(b[1])
    };
    on(q1, q2, p1, d1) || on(q1, q2, p2, d2) || on(p1, p2, q1, d3) || on(p1, p2, q2, d4)
}

/// Deterministic grid for `cfg` and `seed`. Location `i` draws its fading
/// from its own stream, so results do not depend on evaluation order.
pub fn synth_grid(cfg: &EnvironmentConfig, seed_value: u64) -> Result<ChannelGrid> {
    cfg.validate()?;
    let locations = cfg.positions();
    let snr = locations
        .iter()
        .enumerate()
        .map(|(i, loc)| {
            let mean = cfg.mean_snr_db(loc.x, loc.y);
            if cfg.fading.enabled {
                let mut rng = ChaCha8Rng::seed_from_u64(seed::derive(seed_value, i as u64));
                cfg.fading_db(&mut rng).map(|f| mean + f)
            } else {
                [mean; SUBCARRIERS]
            }
        })
        .collect();
    let tx = Point {
        x: cfg.tx[0],
        y: cfg.tx[1],
    };
    Ok(ChannelGrid::new(locations, snr, tx, cfg.grid_spacing_m)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base() -> EnvironmentConfig {
        EnvironmentConfig {
            floor: Rect {
                x0: 0.0,
                y0: 0.0,
                x1: 10.0,
                y1: 4.0,
            },
            grid_spacing_m: 1.0,
            rooms: vec![Room {
                label: "office".into(),
                area: Rect {
                    x0: 0.0,
                    y0: 0.0,
                    x1: 4.0,
                    y1: 4.0,
                },
            }],
            default_region: "hallway".into(),
            walls: vec![],
            tx: [0.0, 0.0],
            tx_power_offset_db: 0.0,
            reference_snr_db: 40.0,
            reference_distance_m: 1.0,
            path_loss_exponent: 3.0,
            fading: Fading::default(),
            sample_rate_hz: 20e6,
            locations: None,
            antenna_heights: None,
        }
    }

    #[test]
    fn reference_distance_gives_reference_snr() {
        let mut cfg = base();
        cfg.locations = Some(vec![ExplicitLocation {
            x: 1.0,
            y: 0.0,
            region: "office".into(),
        }]);
        let g = synth_grid(&cfg, 0).unwrap();
        assert!(g.snr(0).iter().all(|&v| v == 40.0));
    }

    #[test]
    fn wall_subtracts_its_attenuation() {
        let mut cfg = base();
        cfg.locations = Some(vec![
            ExplicitLocation {
                x: 2.0,
                y: 0.0,
                region: "a".into(),
            },
            ExplicitLocation {
                x: 0.0,
                y: 5.0,
                region: "b".into(),
            },
        ]);
        cfg.walls = vec![Wall {
            from: [-1.0, 3.0],
            to: [1.0, 3.0],
            attenuation_db: 10.0,
        }];
        let g = synth_grid(&cfg, 0).unwrap();
        let path_delta = 30.0 * (5.0f64 / 2.0).log10();
        assert!((g.snr(0)[0] - g.snr(1)[0] - 10.0 - path_delta).abs() < 1e-12);
    }

    #[test]
    fn same_seed_same_grid() {
        let mut cfg = base();
        cfg.fading.enabled = true;
        let a = synth_grid(&cfg, 7).unwrap();
        assert_eq!(a, synth_grid(&cfg, 7).unwrap());
        assert_ne!(a, synth_grid(&cfg, 8).unwrap());
        // Frequency selective.
        let row = a.snr(5);
        assert!(row.iter().any(|&v| v != row[0]));
    }

    #[test]
    fn regular_grid_and_regions() {
        let g = synth_grid(&base(), 0).unwrap();
        assert_eq!(g.len(), 40);
        assert_eq!(g.location(0).region, "office");
        assert_eq!(g.location(9).region, "hallway");
        assert_eq!((g.location(11).x, g.location(11).y), (1.5, 1.5));
    }

    #[test]
    fn empty_floor_is_rejected() {
        let mut cfg = base();
        cfg.floor.x1 = 0.0;
        assert!(matches!(synth_grid(&cfg, 0), Err(Error::Environment(_))));
    }

    #[test]
    fn fading_has_unit_mean_power() {
        let mut cfg = base();
        cfg.fading.enabled = true;
        let mut total = 0.0;
        let trials = 2000;
        for s in 0..trials {
            let mut rng = ChaCha8Rng::seed_from_u64(s);
            total += cfg
                .fading_db(&mut rng)
                .iter()
                .map(|d| 10f64.powf(d / 10.0))
                .sum::<f64>()
                / 64.0;
        }
        let mean = total / trials as f64;
        assert!((mean - 1.0).abs() < 0.05, "{mean}");
    }

    #[test]
    fn crossing_cases() {
        assert!(segments_cross([0.0, 0.0], [2.0, 2.0], [0.0, 2.0], [2.0, 0.0]));
        assert!(!segments_cross([0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]));
        assert!(segments_cross([0.0, 0.0], [2.0, 0.0], [1.0, 0.0], [1.0, 3.0]));
    }
}
