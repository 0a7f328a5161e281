use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A source position (1-based line and column).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl std::fmt::Display for Pos {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: Pos, msg: String },
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("shape error: {0}")]
    Shape(String),
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("rank deficient: {0}")]
    Rank(String),
    #[error("no complex embeddings for a field of characteristic {0}")]
    NoEmbeddings(u64),
    #[error("invalid field: {0}")]
    InvalidField(String),
    #[error("constant `{0}` has no root in the field")]
    ConstantUnresolvable(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("generator `{0}` has no assigned matrix")]
    UnboundGenerator(String),
    #[error("module `{module}` violates relation {relation}")]
    RelationViolated { module: String, relation: String },
    #[error("invalid group action: {0}")]
    InvalidAction(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("central element `{0}` does not act centrally on the module")]
    NotCentral(String),
    #[error("isomorphism search undecided: {0}")]
    Undecided(String),
    #[error("search space too large: {0}")]
    TooLarge(String),
    #[error("resource limit exhausted: {0}")]
    ResourceExhausted(String),
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("root finder did not converge: {0}")]
    NotConverged(String),
    #[error("division by zero")]
    DivisionByZero,
}
