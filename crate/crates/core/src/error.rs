use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A size cap was exceeded; the computation was refused rather than attempted.
    #[error("{what} = {value} exceeds the cap {cap}")]
    ResourceLimit {
        what: &'static str,
        value: u64,
        cap: u64,
    },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    /// A hypothesis the operation depends on does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A proven identity failed to hold on concrete numbers. Always a bug.
    #[error("internal invariant failure: {0}")]
    InvariantFailure(String),

    #[error("residue certificate fails at p = {prime}: jacobi(nu, p) = {symbol}")]
    CertificateFailure { prime: u64, symbol: i8 },
}

impl Error {
    pub(crate) fn limit(what: &'static str, value: impl Into<u64>, cap: impl Into<u64>) -> Self {
        Error::ResourceLimit {
            what,
            value: value.into(),
            cap: cap.into(),
        }
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidArgument(msg.into())
    }

    pub(crate) fn invariant(msg: impl Into<String>) -> Self {
        Error::InvariantFailure(msg.into())
    }
}
