use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("token at index {index} uses id 0, which is reserved for the separator")]
    ReservedToken { index: usize },

    #[error(
        "query {index} out of range: t_start={t_start} (target length {t_len}), \
         s_bound={s_bound} (source length {s_len})"
    )]
    QueryOutOfRange {
        index: usize,
        t_start: usize,
        s_bound: usize,
        t_len: usize,
        s_len: usize,
    },

    #[error("sequence of length {len} is too short; at least {min} tokens are required")]
    TooShort { len: usize, min: usize },

    #[error("no query positions to evaluate")]
    NoPositions,

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
