use thiserror::Error;

use crate::dagger::DaggerReport;

/// Errors raised by the verification engine.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated an operation's precondition.
    #[error("domain error: {0}")]
    Domain(String),

    /// A monomial does not fit in the packed key width.
    #[error("exponent range too large to pack: {n_vars} variables of degree {degree}")]
    Overflow { n_vars: usize, degree: u32 },

    /// An allocation would push tracked memory past the configured cap.
    #[error("memory cap of {cap_bytes} bytes exceeded: {requested_bytes} requested with {live_bytes} live")]
    MemoryCap {
        cap_bytes: u64,
        live_bytes: u64,
        requested_bytes: u64,
    },

    /// A run hit its memory cap; carries the telemetry gathered so far.
    #[error("verification aborted in phase `{}`: {}", .0.phase, .0.abort_reason.as_deref().unwrap_or("resource limit"))]
    ResourceExhausted(Box<DaggerReport>),

    /// A homogeneity or size invariant failed during expansion.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// Malformed textual input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
