//! Forward chaining to a fixpoint.

mod db;
mod matcher;
mod rule;
mod saturate;

pub use db::{FactDatabase, FactId, Mask};
pub use matcher::{
    inject_trivial, known_lines, match_initial, match_new, match_new_line, Instantiation, JoinPlans, KnownLines, Line,
    MatchContext, PremiseMatch,
};
pub use rule::{compile_rule, rule_label, Pattern, Rule, RuleSource};
pub use saturate::{
    prove, query, saturate, EngineConfig, Fixpoint, LimitKind, Limits, ProofResult, ProveError, Stats,
    DECISION_PROCEDURE_ADVICE,
};
