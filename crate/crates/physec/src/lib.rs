//! Channel-sounding ingestion, synthetic environments, file formats and the
//! command-line driver around [`physec_core`].

pub mod cli;
pub mod codespec;
mod error;
pub mod fixtures;
pub mod formats;
pub mod manifest;
pub mod sounding;
pub mod synth;

pub use error::{Error, Result};
pub use physec_core;
