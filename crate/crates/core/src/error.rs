use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Which configured cap a computation ran into.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resource {
    /// Number of terms of a single polynomial.
    Terms,
    /// Number of S-pairs treated by one Buchberger run.
    Pairs,
    /// Size of a Frobenius power `p^e` or of an exponent.
    Exponent,
}

impl std::fmt::Display for Resource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Resource::Terms => "max_terms",
            Resource::Pairs => "max_pairs",
            Resource::Exponent => "max_pe",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("polynomials belong to different rings")]
    RingMismatch,

    #[error("invalid ring: {0}")]
    InvalidRing(String),

    #[error("resource cap {resource} exceeded: {detail} (limit {limit})")]
    ResourceExceeded {
        resource: Resource,
        limit: u64,
        detail: String,
    },

    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

impl Error {
    pub(crate) fn resource(resource: Resource, limit: u64, detail: impl Into<String>) -> Self {
        Error::ResourceExceeded {
            resource,
            limit,
            detail: detail.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }
}
