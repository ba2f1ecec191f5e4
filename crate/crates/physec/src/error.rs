use std::io;
use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] physec_core::Error),

    #[error("{}:{line}: {message} (expected {schema})", path.display())]
    Malformed {
        path: PathBuf,
        line: u64,
        message: String,
        schema: &'static str,
    },

    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },

    #[error("{}: {source}", path.display())]
    Json { path: PathBuf, source: serde_json::Error },

    #[error("need {need} samples for {segments} segment(s) of {fft_len}, capture has {found}")]
    TooFewSamples {
        need: usize,
        found: usize,
        fft_len: usize,
        segments: usize,
    },

    #[error("FFT length {fft_len} must be twice the carrier count {carriers}")]
    FftLength { fft_len: usize, carriers: usize },

    #[error("noise estimate is zero: the capture has no power in the odd bins")]
    ZeroNoise,

    #[error("invalid environment: {0}")]
    Environment(String),

    #[error("unknown code {0:?}: expected table1, rm:U,M, rm-dual:U,M or a JSON descriptor path")]
    CodeSpec(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn json(path: impl Into<PathBuf>, source: serde_json::Error) -> Self {
        Error::Json {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
