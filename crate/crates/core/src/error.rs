use std::path::PathBuf;

use thiserror::Error;

use crate::geometry::PredicateKind;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("{kind} expects {expected} arguments, found {found}")]
    Arity {
        kind: PredicateKind,
        expected: usize,
        found: usize,
    },
    #[error("degenerate fact {0}")]
    Degenerate(String),
}

/// Position of a diagnostic inside a source file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Position {
    pub path: PathBuf,
    pub line: usize,
    pub column: usize,
}

impl std::fmt::Display for Position {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}:{}", self.path.display(), self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FofError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Position, message: String },
    #[error("{pos}: non-ASCII byte 0x{byte:02x}")]
    NonAscii { pos: Position, byte: u8 },
    #[error("{pos}: unknown predicate `{name}`")]
    UnknownPredicate { pos: Position, name: String },
    #[error("{pos}: `{name}` takes {expected} arguments, found {found}")]
    Arity {
        pos: Position,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: duplicate unit name `{name}`")]
    DuplicateUnit { pos: Position, name: String },
    #[error("{pos}: variable `{name}` is not quantified")]
    Unquantified { pos: Position, name: String },
    #[error("{pos}: {message}")]
    Shape { pos: Position, message: String },
    #[error("cannot read include `{path}`: {message}")]
    MissingFile { path: PathBuf, message: String },
    #[error("include cycle through `{path}`")]
    IncludeCycle { path: PathBuf },
    #[error("conjecture `{name}` is not allowed in rule catalog {path}")]
    ConjectureInCatalog { name: String, path: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum RuleError {
    #[error("rule `{rule}`: conclusion variable `{var}` is not bound by any premise")]
    Uncoverable { rule: String, var: String },
    #[error("rule `{rule}` has no conclusions")]
    NoConclusions { rule: String },
    #[error("rule `{rule}`: constant `{name}` is not allowed in a rule")]
    Constant { rule: String, name: String },
    #[error("unit `{0}` is a conjecture, not a rule")]
    NotAnAxiom(String),
    #[error("rule name `{0}` is already registered")]
    NameCollision(String),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ProblemError {
    #[error("problem has {0} conjectures, expected at most one")]
    ConjectureCount(usize),
    #[error("unknown rule catalog `{0}`")]
    UnknownCatalog(String),
    #[error("invalid hypothesis or goal: {0}")]
    Geometry(#[from] GeometryError),
    #[error(transparent)]
    Fof(#[from] FofError),
    #[error(transparent)]
    Rule(#[from] RuleError),
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("point `{0}` has no coordinates")]
    MissingPoint(String),
    #[error("zero-length line {0}")]
    ZeroLength(String),
    #[error("no admissible model after {0} draws")]
    ResampleBudget(usize),
    #[error("model file line {line}: {message}")]
    ModelFile { line: usize, message: String },
}

#[derive(Debug, Error)]
pub enum TraceFormatError {
    #[error("unsupported trace format `{0}`")]
    Version(String),
    #[error("malformed trace: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed fact `{0}`")]
    Fact(String),
    #[error("unknown point `{0}`")]
    Point(String),
}
