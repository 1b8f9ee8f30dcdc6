use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("text of length {len} is shorter than the required {required}")]
    TextTooShort { len: usize, required: usize },

    #[error("pattern of length {len} is shorter than the variant minimum {required}")]
    PatternTooShort { len: usize, required: usize },

    #[error("text of length {len} exceeds the supported maximum of {max} bytes")]
    TextTooLarge { len: usize, max: usize },

    #[error("text of length {len} exceeds 2^28 bytes, the limit of the 4-bit delta layout")]
    TextTooLargeForDeltaVariant { len: usize },

    #[error("corrupt phrase encoding: {0}")]
    CorruptEncoding(String),

    #[error("unsupported index format: {0}")]
    UnsupportedFormat(String),

    #[error("corrupt index: {0}")]
    CorruptIndex(String),

    #[error("text does not match the index (expected length {expected_len}, checksum {expected_checksum:#018x})")]
    TextMismatch {
        expected_len: u64,
        expected_checksum: u64,
    },

    #[error("variants disagree on pattern {pattern}: {left} counts {left_count}, {right} counts {right_count}")]
    CountMismatch {
        pattern: usize,
        left: &'static str,
        left_count: usize,
        right: &'static str,
        right_count: usize,
    },

    #[error(transparent)]
    Io(#[from] io::Error),
}
