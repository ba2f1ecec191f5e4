//! Built-in data so the whole pipeline runs without external files.

use std::path::Path;

use physec_core::{BitMatrix, ChannelGrid, LinearCode, RegionMap, WiretapCode};

use crate::formats::parse_grid;
use crate::synth::EnvironmentConfig;

/// Office floor plan the bundled grid was generated from.
pub const ENVIRONMENT_JSON: &str = include_str!("../fixtures/office.json");

/// Output of `physec synth` on [`ENVIRONMENT_JSON`] with [`GRID_SEED`].
pub const GRID_CSV: &str = include_str!("../fixtures/office_grid.csv");

pub const GRID_SEED: u64 = 2019;
pub const GRID_NAME: &str = "bundled:office_grid.csv";

pub const BOB_REGION: &str = "office";
pub const EVE_REGIONS: [&str; 4] = ["lab", "meeting", "storage", "kitchen"];
pub const EXCLUDED_REGIONS: [&str; 1] = ["hallway"];

/// Default thresholds, 25 to 31 dB in 1 dB steps.
pub const TAUS_DB: [f64; 7] = [25.0, 26.0, 27.0, 28.0, 29.0, 30.0, 31.0];

pub fn environment() -> EnvironmentConfig {
    serde_json::from_str(ENVIRONMENT_JSON).expect("bundled environment parses")
}

pub fn grid() -> ChannelGrid {
    parse_grid(GRID_CSV, Path::new(GRID_NAME)).expect("bundled grid parses")
}

pub fn regions() -> RegionMap {
    RegionMap::new(BOB_REGION, EVE_REGIONS).excluding(EXCLUDED_REGIONS)
}

/// The length-4, two-bit-message example code with `G' = H` and
/// syndrome equal to the message.
pub fn table_one() -> WiretapCode {
    let g = BitMatrix::from_bitstrings(&["0111", "1110"], 4).expect("valid rows");
    let base = LinearCode::new(g, "table1").expect("full rank");
    WiretapCode::build(&base).expect("valid code")
}
