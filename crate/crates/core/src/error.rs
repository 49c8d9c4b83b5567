use std::io;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("distributions are defined over different alphabets")]
    AlphabetMismatch,

    #[error("invalid problem specification: {0}")]
    InvalidSpec(String),

    #[error("invalid sample: {0}")]
    InvalidSample(String),

    /// A numeric argument outside the operation's admissible range.
    #[error("{name} = {value} is out of range: {expected}")]
    OutOfRange {
        name: &'static str,
        value: String,
        expected: String,
    },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("witness does not match the sample: {0}")]
    StaleWitness(String),

    #[error("brute force refused: {candidates} candidates exceeds cap {cap}")]
    BruteForceRefused { candidates: String, cap: u64 },

    #[error(transparent)]
    Io(#[from] io::Error),
}

impl Error {
    pub(crate) fn out_of_range(
        name: &'static str,
        value: impl ToString,
        expected: impl Into<String>,
    ) -> Self {
        Error::OutOfRange {
            name,
            value: value.to_string(),
            expected: expected.into(),
        }
    }

    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }

    /// True for I/O failures, false for every validation or parse error.
    pub fn is_io(&self) -> bool {
        matches!(self, Error::Io(_))
    }
}
