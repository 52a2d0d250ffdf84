use thiserror::Error;

/// Errors raised anywhere in the verification pipeline.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("pole: {what} vanishes at j = {index}")]
    Pole { what: String, index: i64 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("series did not converge within {terms} terms: {detail}")]
    NonConvergence { terms: usize, detail: String },

    #[error("acceleration unstable: level values {first} and {second} agree to only {digits} digits")]
    Instability { first: String, second: String, digits: u32 },

    #[error("unknown identity id `{0}`")]
    UnknownId(String),

    #[error("certification failed: {0}")]
    Certification(String),

    #[error("parse error in `{input}`: {message}")]
    Parse { input: String, message: String },

    #[error("resource limit: {0}")]
    ResourceLimit(String),

    #[error("{context}: {source}")]
    Context {
        context: String,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn context(self, context: impl Into<String>) -> Self {
        Error::Context {
            context: context.into(),
            source: Box::new(self),
        }
    }

    /// True for errors caused by bad user input rather than a failed check.
    pub fn is_usage(&self) -> bool {
        match self {
            Error::Domain(_) | Error::UnknownId(_) | Error::Parse { .. } | Error::ResourceLimit(_) => true,
            Error::Context { source, .. } => source.is_usage(),
            _ => false,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
