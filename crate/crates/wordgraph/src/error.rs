use std::io;
use std::path::PathBuf;

/// A syntax or content error at a specific line of an input file.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ParseErrorKind {
    #[error("malformed header {0:?}, expected \"<count> <dim>\"")]
    MalformedHeader(String),
    #[error("row has {found} of {expected} components")]
    ComponentCount { expected: usize, found: usize },
    #[error("duplicate token {0:?}")]
    DuplicateToken(String),
    #[error("non-finite component at position {0}")]
    NonFinite(usize),
    #[error("zero vector for {0:?}")]
    ZeroVector(String),
    #[error("header declares {declared} rows but the file has {found}")]
    CountMismatch { declared: usize, found: usize },
    #[error("invalid number {0:?}")]
    InvalidNumber(String),
    #[error("malformed line: {0}")]
    Malformed(&'static str),
    #[error("invalid UTF-8")]
    InvalidUtf8,
    #[error("self-loop on {0:?}")]
    SelfLoop(String),
    #[error("duplicate edge {0:?} -- {1:?}")]
    DuplicateEdge(String, String),
    #[error("weight {0} outside (0, 1)")]
    WeightOutOfRange(f64),
    #[error("unknown word {0:?}")]
    UnknownWord(String),
    #[error("word {0:?} listed twice")]
    DuplicateWord(String),
    #[error("word {0:?} has no community")]
    MissingWord(String),
    #[error("{0}")]
    Invalid(String),
}

impl ParseError {
    pub(crate) fn at(line: usize, kind: ParseErrorKind) -> Self {
        Self { line, kind }
    }
}

/// Failure while reading one of the file formats.
#[derive(Debug, thiserror::Error)]
pub enum ReadError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Top-level error of a command, carrying its process exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error(transparent)]
    Domain(#[from] wordgraph_core::Error),
}

impl CliError {
    pub const EXIT_CONFIG: i32 = 2;
    pub const EXIT_PARSE: i32 = 3;
    pub const EXIT_IO: i32 = 4;
    pub const EXIT_DOMAIN: i32 = 5;

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) => Self::EXIT_CONFIG,
            Self::Parse { .. } => Self::EXIT_PARSE,
            Self::Io { .. } => Self::EXIT_IO,
            Self::Domain(_) => Self::EXIT_DOMAIN,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io { path: path.into(), source }
    }

    pub(crate) fn read(path: impl Into<PathBuf>, err: ReadError) -> Self {
        match err {
            ReadError::Io(source) => Self::Io { path: path.into(), source },
            ReadError::Parse(source) => Self::Parse { path: path.into(), source },
        }
    }
}
