use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Malformed input or a violated precondition.
    #[error("invalid input: {0}")]
    Input(String),
    /// A tensor handed to `project_to_basis` is not fixed by the slot permutations.
    #[error("not an invariant tensor: {0}")]
    NotInvariant(String),
    /// A configured size cap was exceeded before the computation started (or while it ran).
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
