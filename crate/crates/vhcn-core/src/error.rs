//! Error type shared by all model modules.

use core::fmt;
use thiserror::Error;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A parameter is outside its legal range. `value` is the offending
    /// input rendered as text, `constraint` the range it must satisfy.
    #[error("invalid {name}: {value} (must be {constraint})")]
    InvalidParameter {
        name: &'static str,
        value: String,
        constraint: &'static str,
    },

    /// No bit-rate/latency boundary exists: a loss-free path is bit-rate
    /// limited at every round-trip time.
    #[error("no region boundary: with zero packet loss every round-trip time is bit-rate limited")]
    NoBoundary,

    /// Cache efficiency is undefined when the node serves no output
    /// bandwidth.
    #[error("cache output bandwidth is zero; efficiency is undefined")]
    ZeroOutputBandwidth,

    /// A service catalog must contain at least one entry.
    #[error("service catalog is empty")]
    EmptyCatalog,

    /// An active-user count beyond the number of connected users.
    #[error("active-user count {count} out of range 0..={trials}")]
    CountOutOfRange { count: u32, trials: u32 },
}

impl Error {
    pub(crate) fn invalid(
        name: &'static str,
        value: impl fmt::Display,
        constraint: &'static str,
    ) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            constraint,
        }
    }
}
