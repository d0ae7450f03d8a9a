use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("unknown token `{0}`")]
    UnknownToken(String),
    #[error("label {label} is out of range for n = {n}")]
    LabelOutOfRange { label: u16, n: u16 },
    #[error("basepoint label v may only appear at both ends of a word")]
    MisplacedBasepoint,
    #[error("x-word has odd length {0}")]
    OddLength(usize),
    #[error("basepoint label v is not allowed in this alphabet")]
    BasepointNotAllowed,
    #[error("orientation needs three distinct gap points")]
    DegenerateTriple,
    #[error("word is not αα-free")]
    NotReduced,
    #[error("expected an {expected}-word")]
    WrongKind { expected: &'static str },
    #[error("loop classes of different kinds cannot be compared")]
    KindMismatch,
    #[error("generator string is not freely reduced")]
    UnreducedGenerators,
    #[error("generator index {0} is out of range")]
    GeneratorOutOfRange(u16),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("expansion vector has {got} entries but the word has {expected} maximal words")]
    LengthMismatch { expected: usize, got: usize },
    #[error("parts sum to {got}, expected {expected}")]
    SumMismatch { expected: u64, got: u64 },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("infeasible multiplicity profile: {0}")]
    Infeasible(String),
    #[error("search budget of {0} evaluations exhausted")]
    BudgetExhausted(u64),
    #[error("malformed drawing: {0}")]
    MalformedDrawing(String),
    #[error("unsupported parameter: {0}")]
    Unsupported(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
