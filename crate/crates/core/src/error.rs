use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element index {index} out of range for a ground set of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("subset {mask:#b} is not contained in a ground set of size {size}")]
    MaskOutOfRange { mask: u32, size: usize },
    #[error("ground set of size {0} exceeds the cap of {cap} elements", cap = crate::subset::MAX_ELEMENTS)]
    TooLarge(usize),
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    /// A precondition of an operation does not hold.
    #[error("{0}")]
    Domain(String),
    /// A computed object contradicts a property the code relies on. Seeing
    /// this means there is a bug somewhere.
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse {
        line,
        message: msg.into(),
    })
}
