//! Versioned JSON trace format.
//!
//! ```json
//! {
//!   "format": "geodd-trace/1",
//!   "catalog": "sha256:...",
//!   "config": "sha256:...",
//!   "points": ["A", "B", "C", "D"],
//!   "hypotheses": ["parallelogram(A,B,C,D)"],
//!   "steps": [
//!     { "rule": "R1a", "substitution": [["A", "A"], ...],
//!       "used": ["parallelogram(A,B,C,D)"], "new": ["para(A,B,C,D)"],
//!       "ndgs": [] }
//!   ],
//!   "goals": ["cong(A,B,C,D)"],
//!   "ndgs": [{ "negated": true, "atom": "coll(A,B,C)" }]
//! }
//! ```
//!
//! Facts are written as `predicate(P1,...,Pn)` over the names in `points`.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::engine::EngineConfig;
use crate::error::TraceFormatError;
use crate::geometry::{Fact, PointTable, PredicateKind};
use crate::proof::{ProofStep, ProofTrace};

pub const TRACE_FORMAT: &str = "geodd-trace/1";

/// Identity of the rule set and configuration that produced a trace.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TraceMeta {
    pub catalog: String,
    pub config: String,
}

/// SHA-256 of the options that affect saturation.
pub fn config_hash(config: &EngineConfig) -> String {
    let text = format!(
        "max_facts={};max_firings={};time_ms={};all_pairs={};eqangle_exchange={}",
        config.limits.max_facts,
        config.limits.max_firings,
        config.limits.time_budget.as_millis(),
        config.all_pairs_enumeration,
        config.eqangle_exchange
    );
    format!("sha256:{:x}", Sha256::digest(text.as_bytes()))
}

#[derive(Serialize, Deserialize)]
struct NdgDoc {
    negated: bool,
    atom: String,
}

#[derive(Serialize, Deserialize)]
struct StepDoc {
    rule: String,
    substitution: Vec<(String, String)>,
    used: Vec<String>,
    new: Vec<String>,
    ndgs: Vec<NdgDoc>,
}

#[derive(Serialize, Deserialize)]
struct TraceDoc {
    format: String,
    catalog: String,
    config: String,
    points: Vec<String>,
    hypotheses: Vec<String>,
    steps: Vec<StepDoc>,
    goals: Vec<String>,
    ndgs: Vec<NdgDoc>,
}

pub fn render_structured(trace: &ProofTrace, meta: &TraceMeta) -> String {
    let show = |fs: &[Fact]| fs.iter().map(|f| trace.show(f)).collect::<Vec<_>>();
    let ndgs = |fs: &[Fact]| {
        fs.iter()
            .map(|f| NdgDoc {
                negated: true,
                atom: trace.show(f),
            })
            .collect()
    };
    let doc = TraceDoc {
        format: TRACE_FORMAT.to_string(),
        catalog: meta.catalog.clone(),
        config: meta.config.clone(),
        points: trace.points.names().to_vec(),
        hypotheses: show(&trace.hypotheses),
        steps: trace
            .steps
            .iter()
            .map(|s| StepDoc {
                rule: s.rule.clone(),
                substitution: s
                    .substitution
                    .iter()
                    .map(|(v, p)| (v.clone(), trace.points.name(*p).to_string()))
                    .collect(),
                used: show(&s.used_facts),
                new: show(&s.new_facts),
                ndgs: ndgs(&s.ndgs),
            })
            .collect(),
        goals: show(&trace.goals),
        ndgs: ndgs(&trace.ndgs),
    };
    serde_json::to_string_pretty(&doc).expect("serializable") + "\n"
}

/// Reads `pred(P1,...,Pn)` against a point table.
pub fn parse_fact(text: &str, points: &PointTable) -> Result<Fact, TraceFormatError> {
    let bad = || TraceFormatError::Fact(text.to_string());
    let (name, rest) = text.trim().split_once('(').ok_or_else(bad)?;
    let args = rest.strip_suffix(')').ok_or_else(bad)?;
    let kind = PredicateKind::from_name(name.trim()).ok_or_else(bad)?;
    let ids = args
        .split(',')
        .map(|a| {
            let a = a.trim();
            points.get(a).ok_or_else(|| TraceFormatError::Point(a.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Fact::new(kind, &ids).map_err(|_| bad())
}

pub fn parse_structured(text: &str) -> Result<(ProofTrace, TraceMeta), TraceFormatError> {
    let value: serde_json::Value = serde_json::from_str(text)?;
    let format = value.get("format").and_then(|v| v.as_str()).unwrap_or("");
    if format != TRACE_FORMAT {
        return Err(TraceFormatError::Version(format.to_string()));
    }
    let doc: TraceDoc = serde_json::from_value(value)?;
    let mut points = PointTable::new();
    for n in &doc.points {
        points.intern(n);
    }
    let facts = |xs: &[String]| xs.iter().map(|x| parse_fact(x, &points)).collect::<Result<Vec<_>, _>>();
    let ndgs = |xs: &[NdgDoc]| {
        xs.iter()
            .map(|n| {
                if !n.negated {
                    return Err(TraceFormatError::Fact(n.atom.clone()));
                }
                parse_fact(&n.atom, &points)
            })
            .collect::<Result<Vec<_>, _>>()
    };
    let mut steps = Vec::new();
    for s in &doc.steps {
        let substitution = s
            .substitution
            .iter()
            .map(|(v, p)| {
                points
                    .get(p)
                    .map(|id| (v.clone(), id))
                    .ok_or_else(|| TraceFormatError::Point(p.clone()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        steps.push(ProofStep {
            new_facts: facts(&s.new)?,
            rule: s.rule.clone(),
            substitution,
            used_facts: facts(&s.used)?,
            ndgs: ndgs(&s.ndgs)?,
        });
    }
    let trace = ProofTrace {
        hypotheses: facts(&doc.hypotheses)?,
        goals: facts(&doc.goals)?,
        ndgs: ndgs(&doc.ndgs)?,
        steps,
        points,
    };
    Ok((
        trace,
        TraceMeta {
            catalog: doc.catalog,
            config: doc.config,
        },
    ))
}
