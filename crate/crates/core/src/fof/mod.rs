//! Reader and printer for the Horn-shaped subset of TPTP FOF used by rule
//! catalogs (`.ax`) and problem files (`.p`).
//!
//! ```text
//! unit    := "fof(" name "," role "," formula ")."  |  "include('" path "')."
//! formula := ["("] ["![" vars "]" ":"] body [")"]
//! body    := conj ["=>" conj]
//! conj    := lit ("&" lit)*
//! lit     := ["~"] atom | "(" body ")"
//! ```
//!
//! Negated literals may only appear among premises; they denote
//! non-degeneracy provisos. Variables start with an uppercase letter, point
//! constants with a lowercase one.

mod include;
mod lexer;
mod parser;
mod printer;

use std::fmt;
use std::path::PathBuf;

pub use include::{load_file, resolve_includes, FsLoader, MemoryLoader, SourceLoader};
pub use parser::parse_units;
pub use printer::{print_atom, print_unit};

use crate::geometry::PredicateKind;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Role {
    Axiom,
    Conjecture,
}

impl Role {
    pub fn as_str(self) -> &'static str {
        match self {
            Role::Axiom => "axiom",
            Role::Conjecture => "conjecture",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Const(String),
}

impl Term {
    pub fn name(&self) -> &str {
        match self {
            Term::Var(n) | Term::Const(n) => n,
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Atom {
    pub predicate: PredicateKind,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn vars(&self) -> impl Iterator<Item = &str> {
        self.args.iter().filter_map(|t| match t {
            Term::Var(v) => Some(v.as_str()),
            Term::Const(_) => None,
        })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_atom(self))
    }
}

/// `![vars] : (premises & ~ndgs => conclusions)`
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct QuantifiedHorn {
    pub variables: Vec<String>,
    pub premises: Vec<Atom>,
    pub ndg_premises: Vec<Atom>,
    pub conclusions: Vec<Atom>,
}

impl QuantifiedHorn {
    pub fn atoms(&self) -> impl Iterator<Item = &Atom> {
        self.premises
            .iter()
            .chain(&self.ndg_premises)
            .chain(&self.conclusions)
    }

    /// A premise-free formula without variables: a plain ground fact.
    pub fn is_ground_fact(&self) -> bool {
        self.premises.is_empty() && self.ndg_premises.is_empty() && self.variables.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SourceOrigin {
    pub path: PathBuf,
    pub line: usize,
}

#[derive(Debug, Clone)]
pub struct SourceUnit {
    pub name: String,
    pub role: Role,
    pub formula: QuantifiedHorn,
    pub origin: SourceOrigin,
}

impl SourceUnit {
    /// Equality of name, role and formula; the origin is ignored.
    pub fn same_structure(&self, other: &SourceUnit) -> bool {
        self.name == other.name && self.role == other.role && self.formula == other.formula
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncludeDirective {
    pub path: String,
    pub origin: SourceOrigin,
}

/// Everything read from one file, in source order.
#[derive(Debug, Clone, Default)]
pub struct ParsedFile {
    pub units: Vec<SourceUnit>,
    pub includes: Vec<IncludeDirective>,
}
