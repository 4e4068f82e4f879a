use thiserror::Error;

/// Errors produced by the codec, cipher, baseline, analysis, and envelope layers.
///
/// Network-facing failures live in [`crate::net::NetError`]; everything here is
/// a pure data error and is cheap to clone and compare in tests.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("code {code} out of range [{min}, {max}]")]
    CodeOutOfRange { code: u32, min: u32, max: u32 },

    #[error(
        "decoded code {code} outside alphabet [{min}, {max}] (wrong key or corrupt ciphertext)"
    )]
    DecodedCodeOutOfRange { code: u32, min: u32, max: u32 },

    #[error(
        "character {ch:?} (code {code}) at position {position} outside alphabet [{min}, {max}]"
    )]
    AlphabetViolation {
        position: usize,
        ch: char,
        code: u32,
        min: u32,
        max: u32,
    },

    #[error("reversed value {value} does not fit in {width} digits")]
    ReversedValueTooWide { value: u64, width: u8 },

    #[error("codec width mismatch: expected {expected} digits, found {found}")]
    WidthMismatch { expected: u8, found: u8 },

    #[error("invalid codec config: {0}")]
    InvalidConfig(String),

    #[error("ciphertext was produced in mode {found:?} but mode {expected:?} was supplied")]
    ModeMismatch { expected: String, found: String },

    #[error("key schedule must contain at least one key")]
    EmptyKeySchedule,

    #[error("ciphertext value overflow at position {0}")]
    Overflow(usize),

    #[error("ciphertext value {value} at position {position} is smaller than {subtracted} (wrong key or corrupt ciphertext)")]
    NegativeResidue {
        position: usize,
        value: u64,
        subtracted: u64,
    },

    #[error("length mismatch: plaintext has {plaintext_len} symbols, ciphertext has {ciphertext_len} values")]
    LengthMismatch {
        plaintext_len: usize,
        ciphertext_len: usize,
    },

    #[error("positions {first_position} and {second_position} imply different keys for class {class}: {first_key} vs {second_key}")]
    InconsistentPair {
        class: usize,
        first_position: usize,
        second_position: usize,
        first_key: u64,
        second_key: u64,
    },

    #[error("empty ciphertext")]
    EmptyCiphertext,

    #[error("empty text")]
    EmptyText,

    #[error("candidate search space of {size} schedules exceeds limit {limit}")]
    SearchSpaceExceeded { size: u128, limit: u64 },

    #[error("invalid frequency table: {0}")]
    InvalidFrequencyTable(String),

    #[error("invalid shift {0}: must be in 0..=25")]
    InvalidShift(u32),

    #[error("invalid keyword: {0}")]
    InvalidKeyword(String),

    #[error("parse error at byte {offset}: {reason}")]
    Parse { offset: usize, reason: String },

    #[error("bad magic: input is not an envelope")]
    BadMagic,

    #[error("truncated input: need {needed} more bytes")]
    TruncatedInput { needed: usize },

    #[error("{extra} trailing bytes after envelope")]
    TrailingBytes { extra: usize },

    #[error("unsupported envelope version {0}")]
    UnsupportedVersion(u8),

    #[error("unknown codec mode {0}")]
    UnknownMode(String),

    #[error("value {value} exceeds the 32-bit envelope bound")]
    ValueTooLarge { value: u64 },

    #[error("too many keys for envelope: {0} (max 255)")]
    TooManyKeys(usize),
}

impl Error {
    /// Short machine-readable name of the variant, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::CodeOutOfRange { .. } => "CodeOutOfRange",
            Error::DecodedCodeOutOfRange { .. } => "DecodedCodeOutOfRange",
            Error::AlphabetViolation { .. } => "AlphabetViolation",
            Error::ReversedValueTooWide { .. } => "ReversedValueTooWide",
            Error::WidthMismatch { .. } => "WidthMismatch",
            Error::InvalidConfig(_) => "InvalidConfig",
            Error::ModeMismatch { .. } => "ModeMismatch",
            Error::EmptyKeySchedule => "EmptyKeySchedule",
            Error::Overflow(_) => "Overflow",
            Error::NegativeResidue { .. } => "NegativeResidue",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::InconsistentPair { .. } => "InconsistentPair",
            Error::EmptyCiphertext => "EmptyCiphertext",
            Error::EmptyText => "EmptyText",
            Error::SearchSpaceExceeded { .. } => "SearchSpaceExceeded",
            Error::InvalidFrequencyTable(_) => "InvalidFrequencyTable",
            Error::InvalidShift(_) => "InvalidShift",
            Error::InvalidKeyword(_) => "InvalidKeyword",
            Error::Parse { .. } => "ParseError",
            Error::BadMagic => "BadMagic",
            Error::TruncatedInput { .. } => "TruncatedInput",
            Error::TrailingBytes { .. } => "TrailingBytes",
            Error::UnsupportedVersion(_) => "UnsupportedVersion",
            Error::UnknownMode(_) => "UnknownMode",
            Error::ValueTooLarge { .. } => "ValueTooLarge",
            Error::TooManyKeys(_) => "TooManyKeys",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
