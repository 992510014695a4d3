//! Forward-chaining geometry prover over a fixed rule catalog.
//!
//! Facts are predicates over named points (`para`, `cong`, `eqangle`, ...).
//! Rules are Horn clauses read from TPTP-style FOF files. [`engine::saturate`]
//! closes the hypotheses under the rules, [`proof`] extracts and checks proof
//! traces, [`oracle`] audits results on coordinate models and [`render`]
//! prints traces.
//!
//! ```
//! use geodd::{catalog, problem::Problem, fof::FsLoader, engine::EngineConfig};
//!
//! let text = "fof(t,conjecture,(![A,B,C,D] : parallelogram(A,B,C,D) => cong(A,B,C,D))).";
//! let units = geodd::fof::parse_units(text, "t.p".as_ref()).unwrap().units;
//! let problem = Problem::from_units(&units).unwrap();
//! let result = problem.prove(&catalog::year7(), &EngineConfig::default()).unwrap();
//! assert!(result.is_proved());
//! # let _ = FsLoader::default();
//! ```

pub mod catalog;
pub mod cli;
pub mod engine;
pub mod error;
pub mod fof;
pub mod geometry;
pub mod oracle;
pub mod problem;
pub mod proof;
pub mod render;

pub use engine::{prove, saturate, EngineConfig, Fixpoint, Limits, ProofResult, Rule};
pub use geometry::{Fact, PointId, PointTable, PredicateKind};
pub use problem::Problem;
pub use proof::{check_trace, extract_trace, register_lemma, verify_trace, ProofTrace};
