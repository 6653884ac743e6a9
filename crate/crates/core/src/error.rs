use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("player {0} has an empty strategy set")]
    EmptyStrategySet(usize),

    #[error("profile space has {size} elements, above the enumeration cap of {cap}")]
    ProfileSpaceTooLarge { size: u128, cap: u128 },

    #[error("invalid profile: {0}")]
    InvalidProfile(String),

    #[error("game has {actual} players, expected {expected}")]
    PlayerCount { expected: &'static str, actual: usize },

    #[error("player index {index} out of range for a {players}-player game")]
    InvalidPlayer { index: usize, players: usize },

    #[error("cannot select from an empty strategy set")]
    EmptyCandidates,

    #[error("hierarchy {0:?} is not a permutation of the player indices")]
    InvalidHierarchy(Vec<usize>),

    #[error("horizon mismatch: {0}")]
    HorizonMismatch(String),

    #[error("action {0} is outside the allowed domain")]
    ActionOutOfDomain(f64),

    #[error("invalid strategy: {0}")]
    InvalidStrategy(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Io(e.to_string())
    }
}
