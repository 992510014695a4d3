//! Provenance, proof traces and an independent trace checker.
//!
//! Every stored fact remembers the first derivation that produced it. A trace
//! is extracted by walking those derivations backwards from the goals, so it
//! only contains facts the goals depend on. [`verify_trace`] re-checks each
//! step directly against the cited rule: it instantiates the rule with the
//! recorded substitution and compares canonical forms, without going through
//! the saturation matcher.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use thiserror::Error;

use crate::engine::{compile_rule, FactId, Fixpoint, Pattern, Rule, RuleSource};
use crate::error::RuleError;
use crate::fof::{Atom, QuantifiedHorn, Role, SourceOrigin, SourceUnit, Term};
use crate::geometry::{is_reflexive_trivial, Fact, PointId, PointTable, Symmetries};

/// Rule label of steps that add a reflexive fact.
pub const TRIVIAL_LABEL: &str = "trivial";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Origin {
    Hypothesis,
    /// `rule` indexes the rule list the fixpoint was computed with.
    Rule { rule: usize, substitution: Vec<PointId> },
    Lemma { rule: usize, substitution: Vec<PointId> },
    TrivialInjected,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Provenance {
    pub origin: Origin,
    /// One handle per positive premise, all inserted before this fact.
    pub premises: Vec<FactId>,
    pub ndgs: Vec<Fact>,
    /// Facts concluded by the same rule application share a firing number.
    pub firing: u32,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofStep {
    pub new_facts: Vec<Fact>,
    pub rule: String,
    /// Rule variable name and the point bound to it.
    pub substitution: Vec<(String, PointId)>,
    pub used_facts: Vec<Fact>,
    pub ndgs: Vec<Fact>,
}

impl ProofStep {
    pub fn is_trivial(&self) -> bool {
        self.rule == TRIVIAL_LABEL
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofTrace {
    pub points: PointTable,
    pub hypotheses: Vec<Fact>,
    pub steps: Vec<ProofStep>,
    pub goals: Vec<Fact>,
    pub ndgs: Vec<Fact>,
}

impl ProofTrace {
    pub fn show(&self, fact: &Fact) -> String {
        fact.display(&self.points).to_string()
    }

    /// Rule labels in step order.
    pub fn labels(&self) -> Vec<&str> {
        self.steps.iter().map(|s| s.rule.as_str()).collect()
    }

    /// Index of the step that introduced `fact` (up to symmetry).
    pub fn step_of(&self, fact: &Fact) -> Option<usize> {
        let c = fact.canonical();
        self.steps
            .iter()
            .position(|s| s.new_facts.iter().any(|f| f.canonical() == c))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("goal {0} is not in the fixpoint")]
    GoalNotDerived(String),
}

/// Walks provenance backwards from `goals` and emits the reachable
/// derivations in insertion order.
pub fn extract_trace(fixpoint: &Fixpoint, goals: &[Fact]) -> Result<ProofTrace, TraceError> {
    let db = &fixpoint.db;
    let mut stack = Vec::new();
    for g in goals {
        let id = fixpoint
            .query(g)
            .ok_or_else(|| TraceError::GoalNotDerived(fixpoint.display_fact(g)))?;
        stack.push(id);
    }
    let mut reachable = BTreeSet::new();
    while let Some(id) = stack.pop() {
        if reachable.insert(id) {
            stack.extend(db.provenance(id).premises.iter().copied());
        }
    }

    // group by firing, ordered by the first fact each firing inserted
    let mut groups: BTreeMap<u32, Vec<FactId>> = BTreeMap::new();
    for &id in &reachable {
        let prov = db.provenance(id);
        if prov.origin != Origin::Hypothesis {
            groups.entry(prov.firing).or_default().push(id);
        }
    }
    let mut ordered: Vec<Vec<FactId>> = groups.into_values().collect();
    ordered.sort_by_key(|ids| ids[0]);

    let steps = ordered
        .into_iter()
        .map(|ids| {
            let prov = db.provenance(ids[0]);
            let (rule, substitution) = match &prov.origin {
                Origin::Rule { rule, substitution } | Origin::Lemma { rule, substitution } => {
                    let r = &fixpoint.rules[*rule];
                    let subst = r.vars.iter().cloned().zip(substitution.iter().copied()).collect();
                    (r.label().to_string(), subst)
                }
                _ => (TRIVIAL_LABEL.to_string(), Vec::new()),
            };
            ProofStep {
                new_facts: ids.iter().map(|&id| *db.fact(id)).collect(),
                rule,
                substitution,
                used_facts: prov.premises.iter().map(|&id| *db.fact(id)).collect(),
                ndgs: prov.ndgs.clone(),
            }
        })
        .collect();

    let mut trace = ProofTrace {
        points: fixpoint.points.clone(),
        hypotheses: fixpoint.hypotheses.iter().map(|&id| *db.fact(id)).collect(),
        steps,
        goals: goals.to_vec(),
        ndgs: Vec::new(),
    };
    trace.ndgs = collect_ndgs(&trace);
    Ok(trace)
}

/// Canonical, deduplicated, sorted union of the provisos of all steps.
pub fn collect_ndgs(trace: &ProofTrace) -> Vec<Fact> {
    let set: BTreeSet<Fact> = trace
        .steps
        .iter()
        .flat_map(|s| s.ndgs.iter().map(Fact::canonical))
        .collect();
    set.into_iter().collect()
}

fn var_name(label: &str, taken: &mut HashSet<String>) -> String {
    let mut base: String = label.chars().filter(|c| c.is_ascii_alphanumeric() || *c == '_').collect();
    if !base.starts_with(|c: char| c.is_ascii_uppercase()) {
        let mut chars = base.chars();
        base = match chars.next() {
            Some(c) if c.is_ascii_alphabetic() => c.to_ascii_uppercase().to_string() + chars.as_str(),
            _ => format!("X{base}"),
        };
    }
    let mut name = base.clone();
    let mut n = 1;
    while !taken.insert(name.clone()) {
        name = format!("{base}{n}");
        n += 1;
    }
    name
}

/// Turns a proved problem into a rule: hypotheses become premises, goals
/// become conclusions and the trace's provisos become negated premises.
pub fn register_lemma(
    name: &str,
    hypotheses: &[Fact],
    goals: &[Fact],
    trace: &ProofTrace,
    existing: &[Rule],
) -> Result<Rule, RuleError> {
    if existing.iter().any(|r| r.name == name || r.label() == name) {
        return Err(RuleError::NameCollision(name.to_string()));
    }
    let mut taken = HashSet::new();
    let mut names: BTreeMap<PointId, String> = BTreeMap::new();
    let ndgs = collect_ndgs(trace);
    for f in hypotheses.iter().chain(goals).chain(&ndgs) {
        for &p in f.args() {
            names
                .entry(p)
                .or_insert_with(|| var_name(trace.points.name(p), &mut taken));
        }
    }
    let atom = |f: &Fact| Atom {
        predicate: f.kind(),
        args: f.args().iter().map(|p| Term::Var(names[p].clone())).collect(),
    };
    let mut variables: Vec<(PointId, String)> = names.iter().map(|(p, n)| (*p, n.clone())).collect();
    variables.sort();
    let unit = SourceUnit {
        name: name.to_string(),
        role: Role::Axiom,
        formula: QuantifiedHorn {
            variables: variables.into_iter().map(|(_, n)| n).collect(),
            premises: hypotheses.iter().map(atom).collect(),
            ndg_premises: ndgs.iter().map(atom).collect(),
            conclusions: goals.iter().map(atom).collect(),
        },
        origin: SourceOrigin::default(),
    };
    compile_rule(&unit, RuleSource::Lemma, false)
}

/// Why a trace was rejected.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceDefect {
    /// Offending step, or `None` for goal coverage.
    pub step: Option<usize>,
    pub reason: String,
}

impl fmt::Display for TraceDefect {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.step {
            Some(i) => write!(f, "step {}: {}", i + 1, self.reason),
            None => write!(f, "{}", self.reason),
        }
    }
}

/// Checks every step against its cited rule. Returns the first defect.
pub fn check_trace(trace: &ProofTrace, rules: &[Rule]) -> Result<(), TraceDefect> {
    check_trace_with(trace, rules, Symmetries::standard())
}

/// `check_trace` reduced to a verdict.
pub fn verify_trace(trace: &ProofTrace, rules: &[Rule]) -> bool {
    check_trace(trace, rules).is_ok()
}

pub fn check_trace_with(trace: &ProofTrace, rules: &[Rule], sym: &Symmetries) -> Result<(), TraceDefect> {
    let by_label: HashMap<&str, &Rule> = rules
        .iter()
        .flat_map(|r| [(r.label(), r), (r.name.as_str(), r)])
        .collect();
    let mut known: HashSet<Fact> = HashSet::new();
    for h in &trace.hypotheses {
        if !h.is_valid() {
            return Err(TraceDefect {
                step: None,
                reason: format!("degenerate hypothesis {}", trace.show(h)),
            });
        }
        known.insert(sym.canon(h));
    }

    for (i, step) in trace.steps.iter().enumerate() {
        let defect = |reason: String| TraceDefect { step: Some(i), reason };
        if step.new_facts.is_empty() {
            return Err(defect("step adds no fact".into()));
        }
        for f in &step.new_facts {
            if !f.is_valid() {
                return Err(defect(format!("degenerate fact {}", trace.show(f))));
            }
        }
        if step.is_trivial() {
            if !step.used_facts.is_empty() || !step.ndgs.is_empty() {
                return Err(defect("trivial step cites premises".into()));
            }
            if let Some(f) = step.new_facts.iter().find(|f| !is_reflexive_trivial(f)) {
                return Err(defect(format!("{} is not a reflexive fact", trace.show(f))));
            }
        } else {
            let rule = by_label
                .get(step.rule.as_str())
                .ok_or_else(|| defect(format!("unknown rule `{}`", step.rule)))?;
            let mut values = Vec::with_capacity(rule.vars.len());
            for v in &rule.vars {
                let p = step
                    .substitution
                    .iter()
                    .find(|(name, _)| name == v)
                    .map(|(_, p)| *p)
                    .ok_or_else(|| defect(format!("variable {v} of {} is unbound", step.rule)))?;
                values.push(p);
            }
            let ground = |ps: &[Pattern]| -> Vec<Fact> {
                ps.iter()
                    .map(|p| {
                        let args: Vec<PointId> = p.args.iter().map(|&v| values[v]).collect();
                        Fact::raw(p.kind, &args).expect("arity")
                    })
                    .collect()
            };
            let premises = ground(&rule.premises);
            if let Some(bad) = premises.iter().find(|f| !f.is_valid()) {
                return Err(defect(format!("premise {} is degenerate", trace.show(bad))));
            }
            let premises: BTreeSet<Fact> = premises.iter().map(|f| sym.canon(f)).collect();
            let used: BTreeSet<Fact> = step.used_facts.iter().map(|f| sym.canon(f)).collect();
            if premises != used {
                return Err(defect(format!(
                    "used facts do not match the premises of {}",
                    step.rule
                )));
            }
            if let Some(f) = used.iter().find(|f| !known.contains(*f)) {
                return Err(defect(format!("{} is used before it is known", trace.show(f))));
            }
            let conclusions: BTreeSet<Fact> = ground(&rule.conclusions)
                .iter()
                .filter(|f| f.is_valid())
                .map(|f| sym.canon(f))
                .collect();
            if let Some(f) = step
                .new_facts
                .iter()
                .find(|f| !conclusions.contains(&sym.canon(f)))
            {
                return Err(defect(format!(
                    "{} does not follow by {}",
                    trace.show(f),
                    step.rule
                )));
            }
            let expected_ndgs: BTreeSet<Fact> = ground(&rule.ndg_premises).iter().map(|f| sym.canon(f)).collect();
            let ndgs: BTreeSet<Fact> = step.ndgs.iter().map(|f| sym.canon(f)).collect();
            if expected_ndgs != ndgs {
                return Err(defect(format!("provisos do not match {}", step.rule)));
            }
        }
        for f in &step.new_facts {
            known.insert(sym.canon(f));
        }
    }

    for g in &trace.goals {
        if !known.contains(&sym.canon(g)) {
            return Err(TraceDefect {
                step: None,
                reason: format!("goal {} is not established", trace.show(g)),
            });
        }
    }
    Ok(())
}
