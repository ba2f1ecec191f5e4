use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("shape mismatch: {left_rows}x{left_cols} against {right_rows}x{right_cols}")]
    ShapeMismatch {
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("index {index} out of range for length {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("duplicate index {0}")]
    DuplicateIndex(usize),
    #[error("matrix has rank {rank} but {rows} rows; full row rank required")]
    NotFullRank { rank: usize, rows: usize },
    #[error("rows already span the whole space of length {0}")]
    NothingToComplete(usize),
    #[error("invalid bit string {0:?}")]
    InvalidBits(String),
    #[error("expected a word of length {expected}, got {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("Reed-Muller parameters out of range: order {order}, degree {degree}")]
    ReedMullerParameters { order: usize, degree: usize },
    #[error("{what} of size {size} exceeds the cap of {cap}")]
    TooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },
    #[error("code of dimension {dim} and length {n} cannot carry a wiretap message")]
    DegenerateCode { dim: usize, n: usize },
    #[error("supplied parity-check matrix does not span the dual code")]
    BadParityCheck,
    #[error("observation is inconsistent with every codeword")]
    InconsistentObservation,
    #[error("generalized Hamming weights of the dual code are not available")]
    GhwUnavailable,
    #[error("region {0:?} has no locations in the grid")]
    UnknownRegion(String),
    #[error("no eavesdropper regions defined")]
    NoEveRegions,
    #[error("region {0:?} is both Bob's region and an eavesdropper region")]
    RegionOverlap(String),
    #[error("location {index}: expected {expected} subcarrier values, got {found}")]
    SubcarrierCount {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("location {index} has a non-finite SNR value")]
    NonFiniteSnr { index: usize },
    #[error("blocklength {n} exceeds the {active} active carriers")]
    BlockExceedsCarriers { n: usize, active: usize },
    #[error("no sweep point satisfies the equivocation constraint")]
    NoSecurePoint,
    #[error("empty input: {0}")]
    Empty(&'static str),
}
