use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("universe must contain at least one element")]
    EmptyUniverse,
    #[error("duplicate label {0:?}")]
    DuplicateLabel(String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("label {0:?} appears in more than one block")]
    NotDisjoint(String),
    #[error("label {0:?} is not covered by any block")]
    NotCovering(String),
    #[error("block {0} is empty")]
    EmptyBlock(usize),
    #[error("operands belong to different universes")]
    UniverseMismatch,
    #[error("lower approximation is not contained in upper approximation")]
    LowerExceedsUpper,

    #[error("zero denominator")]
    ZeroDenominator,
    #[error("invalid fraction literal {0:?}")]
    InvalidRatio(String),
    #[error("precision {0} is outside [0, 1/2]")]
    PrecisionOutOfRange(String),
    #[error("precision grid must be strictly ascending: {0}")]
    UnsortedGrid(String),
    #[error("{family} chain violated between beta = {lo} and beta = {hi}")]
    ChainViolation {
        family: &'static str,
        lo: String,
        hi: String,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("{location}: {source}")]
    Located {
        location: String,
        #[source]
        source: Box<Error>,
    },
    #[error("row {0} does not have one cell per header column")]
    RaggedRow(usize),
    #[error("duplicate object {0:?}")]
    DuplicateObject(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error("table has no data rows")]
    EmptyTable,
    #[error("unknown attribute {0:?}")]
    UnknownAttribute(String),
    #[error("attribute set is empty")]
    EmptyAttributeSet,
}

impl Error {
    /// Failures to read, parse or interpret the input and flags, as opposed
    /// to well-formed input that violates a domain invariant.
    pub fn is_parse(&self) -> bool {
        match self {
            Error::Parse { .. }
            | Error::InvalidRatio(_)
            | Error::ZeroDenominator
            | Error::RaggedRow(_)
            | Error::EmptyTable
            | Error::UnsortedGrid(_)
            | Error::Io { .. }
            | Error::Usage(_) => true,
            Error::Located { source, .. } => source.is_parse(),
            _ => false,
        }
    }

    /// Strips any location wrappers.
    pub fn root(&self) -> &Error {
        match self {
            Error::Located { source, .. } => source.root(),
            other => other,
        }
    }

    pub(crate) fn at(self, location: impl Into<String>) -> Error {
        Error::Located {
            location: location.into(),
            source: Box::new(self),
        }
    }
}
