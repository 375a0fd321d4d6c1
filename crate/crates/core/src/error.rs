use thiserror::Error;

/// Errors raised by the library and the command surface.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A caller violated an operation's precondition (bad index, dimension, angle, rotation).
    #[error("usage error: {0}")]
    Usage(String),

    /// A matrix or vector does not describe a physical qubit state.
    #[error("invalid state: {0}")]
    InvalidState(String),

    /// A Kraus set does not satisfy the completeness relation.
    #[error("invalid channel: {0}")]
    InvalidChannel(String),

    /// An explicit Euler step left the Bloch ball.
    #[error("step {step} left the Bloch ball (|r| = {norm}); dt = {dt} is too coarse for this generator")]
    StepTooLarge { step: usize, norm: f64, dt: f64 },

    /// An input document could not be read or decoded.
    #[error("{context}: {message}")]
    Parse { context: String, message: String },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn usage(msg: impl Into<String>) -> Self {
        Error::Usage(msg.into())
    }

    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
