//! Coset wiretap coding over threshold erasure channels.
//!
//! This crate holds the allocation-only algorithmic core: binary-field linear
//! algebra, linear block codes (Reed–Muller construction, duals, generalized
//! Hamming weights), coset wiretap encoding with exact equivocation analysis,
//! per-subcarrier capacity arithmetic, and the code/threshold sweep that picks
//! a secure operating point. It does no IO and builds without `std`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod bitmatrix;
pub mod channel;
pub mod codes;
mod error;
pub mod seed;
mod subsets;
pub mod sweep;
pub mod wiretap;

pub use bitmatrix::{BitMatrix, Word, WordBasis};
pub use channel::{CapacityMode, ChannelGrid, Location, Point, RegionMap, SUBCARRIERS};
pub use codes::{GhwProfile, GhwSource, LinearCode};
pub use error::Error;
pub use sweep::{BlockMapping, McReport, SweepPoint};
pub use wiretap::{EquivocationMatrix, ErasurePattern, Observation, Posterior, RmRole, WiretapCode};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub type Result<T, E = Error> = core::result::Result<T, E>;

/// Size limits for the exhaustive routines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest code dimension for codeword enumeration, and largest
    /// blocklength for equivocation-matrix pattern enumeration.
    pub enumeration: usize,
    /// Largest blocklength for exact generalized Hamming weight search.
    pub ghw_exact: usize,
    /// Largest blocklength for the brute-force posterior.
    pub oracle: usize,
    /// Largest message length for a dense syndrome table.
    pub lookup_bits: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Self {
            enumeration: 24,
            ghw_exact: 20,
            oracle: 16,
            lookup_bits: 20,
        }
    }
}
