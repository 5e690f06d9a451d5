use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("undeclared letter `{0}`")]
    UndeclaredLetter(String),
    #[error("unknown state {0}")]
    UnknownState(usize),
    #[error("language does not have finite shiftlag")]
    NotFiniteShiftlag,
    #[error("language does not have finite shift")]
    NotFiniteShift,
    #[error("words are not compatible")]
    Incompatible,
    #[error("target is not contained in the lag-bounded shape: {0}")]
    LagBoundExceeded(String),
    #[error("relation is not recognizable on the target shape")]
    NotRecognizableOnTarget,
    #[error("words do not synchronize the same pair")]
    NotSamePair,
    #[error("second language is not a subset of the first")]
    NotSubset,
    #[error("language is not contained in (ΣΓ)*")]
    NotAlternating,
    #[error("language is not (ΣΓ)*-prefix closed")]
    NotPrefixClosed,
    #[error("alphabets are not tagged copies of a common alphabet")]
    AlphabetShapeMismatch,
    #[error("relations are not disjoint")]
    NotDisjoint,
    #[error("distance automaton is not limited")]
    NotLimited,
    #[error("iterative deepening exceeded its cap (defect)")]
    Diverged,
    #[error("relation has no recognizable uniformization")]
    NoRecognizableUniformization,
    #[error("decomposition does not describe a function: {0}")]
    NotFunctionalDecomposition(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("{path}:{line}:{col}: {msg}")]
    Parse {
        path: String,
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("internal defect: {0}")]
    Internal(String),
    #[error("io: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
