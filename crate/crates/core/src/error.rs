use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A symbol, index or argument outside the domain of the operation.
    #[error("input error: {0}")]
    Input(String),

    /// Two automata or transducers that must share alphabets do not.
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    /// A word whose length is not a multiple of the round length.
    #[error("not a {k}-round word: length {len} is not divisible by {k}")]
    NotARoundWord { len: usize, k: usize },

    /// A line-numbered diagnostic from the text loaders.
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Reading or writing a file failed.
    #[error("i/o error: {0}")]
    Io(String),

    /// A computation whose size exceeds a configured cap.
    #[error("resource limit: {0}")]
    Resource(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn input_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
