use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Core(#[from] cmtest_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{context}: {message}")]
    Format { context: String, message: String },

    #[error("invalid colormap spec: {0}")]
    Spec(String),

    #[error("invalid test spec: {0}")]
    TestSpec(String),

    #[error("{0}")]
    Usage(String),

    #[error("png encoding failed: {0}")]
    Png(String),
}

impl Error {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io { path: path.into(), source }
    }

    pub fn format(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Format { context: context.into(), message: message.into() }
    }

    /// Process exit code: 2 for usage errors (unknown functions or
    /// parameters, malformed flags), 3 for file and format errors, 4 for
    /// violated invariants.
    pub fn exit_code(&self) -> i32 {
        use cmtest_core::Error as C;
        match self {
            Error::Core(C::UnknownFunction(_) | C::UnknownParameter { .. } | C::InvalidParameter { .. }) => 2,
            Error::Usage(_) | Error::TestSpec(_) => 2,
            Error::Io { .. } | Error::Format { .. } | Error::Spec(_) | Error::Png(_) => 3,
            Error::Core(_) => 4,
        }
    }
}
