use std::collections::VecDeque;
use std::fmt;
use std::time::{Duration, Instant};

use thiserror::Error;

use super::db::{FactDatabase, FactId};
use super::matcher::{match_initial, match_new, match_new_line, Instantiation, JoinPlans, KnownLines, Line, MatchContext, PremiseMatch};
use super::rule::{Rule, RuleSource};
use crate::error::GeometryError;
use crate::geometry::{is_reflexive_trivial, Fact, PointTable, PredicateKind, Symmetries};
use crate::proof::{extract_trace, Origin, ProofTrace, Provenance};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_facts: usize,
    pub max_firings: usize,
    pub time_budget: Duration,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_facts: 100_000,
            max_firings: 1_000_000,
            time_budget: Duration::from_secs(10),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LimitKind {
    Facts,
    Firings,
    Time,
}

impl fmt::Display for LimitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LimitKind::Facts => "max-facts",
            LimitKind::Firings => "max-firings",
            LimitKind::Time => "time-budget",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct EngineConfig {
    pub limits: Limits,
    /// Enumeration variables range over all point pairs instead of known lines.
    pub all_pairs_enumeration: bool,
    /// Adds the eqangle exchange law to the symmetry groups.
    pub eqangle_exchange: bool,
}

impl EngineConfig {
    pub fn symmetries(&self) -> &'static Symmetries {
        Symmetries::get(self.eqangle_exchange)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Stats {
    /// Worklist items processed.
    pub iterations: usize,
    pub facts_per_predicate: Vec<(PredicateKind, usize)>,
    /// Indexed like the rule list.
    pub firings_per_rule: Vec<(String, usize)>,
    pub injected_trivial: usize,
    pub total_facts: usize,
}

impl Stats {
    pub fn total_firings(&self) -> usize {
        self.firings_per_rule.iter().map(|(_, n)| n).sum()
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "iterations: {}", self.iterations)?;
        writeln!(f, "facts: {}", self.total_facts)?;
        writeln!(f, "injected trivial facts: {}", self.injected_trivial)?;
        for (k, n) in &self.facts_per_predicate {
            writeln!(f, "  {k}: {n}")?;
        }
        writeln!(f, "firings: {}", self.total_firings())?;
        for (r, n) in &self.firings_per_rule {
            writeln!(f, "  {r}: {n}")?;
        }
        Ok(())
    }
}

/// The closed fact set.
#[derive(Debug, Clone)]
pub struct Fixpoint {
    pub points: PointTable,
    pub db: FactDatabase,
    pub rules: Vec<Rule>,
    pub hypotheses: Vec<FactId>,
    pub stats: Stats,
    /// True iff the worklist drained; false iff a limit tripped.
    pub exhausted: bool,
    pub tripped: Option<LimitKind>,
}

impl Fixpoint {
    pub fn query(&self, goal: &Fact) -> Option<FactId> {
        query(&self.db, goal)
    }

    pub fn display_fact(&self, fact: &Fact) -> String {
        fact.display(&self.points).to_string()
    }
}

/// Membership of `goal`'s canonical form.
pub fn query(db: &FactDatabase, goal: &Fact) -> Option<FactId> {
    db.get(goal)
}

enum Work {
    /// Rules whose premises can all be met by reflexive facts.
    Start,
    Fact(FactId),
    Line(Line),
}

struct Saturation<'a> {
    rules: &'a [Rule],
    plans: Vec<JoinPlans>,
    db: FactDatabase,
    lines: KnownLines,
    /// Lines whose work item has been processed.
    active_lines: KnownLines,
    /// Facts whose work item has been processed.
    processed: usize,
    queue: VecDeque<Work>,
    stats: Stats,
    next_firing: u32,
    config: EngineConfig,
    points: usize,
    started: Instant,
    tripped: Option<LimitKind>,
}

impl Saturation<'_> {
    fn add(&mut self, fact: Fact, provenance: Provenance) -> FactId {
        let (id, new) = self.db.insert(fact, provenance);
        if new {
            self.queue.push_back(Work::Fact(id));
            for l in fact.lines() {
                if self.lines.insert(l) {
                    self.queue.push_back(Work::Line(l));
                }
            }
            if self.db.len() >= self.config.limits.max_facts {
                self.tripped.get_or_insert(LimitKind::Facts);
            }
        }
        id
    }

    fn firing_id(&mut self) -> u32 {
        self.next_firing += 1;
        self.next_firing - 1
    }

    fn fire(&mut self, rule_index: usize, inst: Instantiation) {
        let rules = self.rules;
        let rule = &rules[rule_index];
        let sym = self.db.symmetries();
        self.stats.firings_per_rule[rule_index].1 += 1;
        if self.stats.total_firings() >= self.config.limits.max_firings {
            self.tripped.get_or_insert(LimitKind::Firings);
        }

        let mut ndgs = Vec::new();
        for p in &rule.ndg_premises {
            let f = p.ground(&inst.substitution);
            if !f.is_valid() {
                // proviso is violated by the substitution itself
                return;
            }
            let c = sym.canon(&f);
            if !ndgs.contains(&c) {
                ndgs.push(c);
            }
        }
        let conclusions: Vec<Fact> = rule
            .conclusions
            .iter()
            .map(|p| p.ground(&inst.substitution))
            .filter(|f| f.is_valid())
            .map(|f| sym.canon(&f))
            .filter(|f| !is_reflexive_trivial(f))
            .collect();
        if conclusions.is_empty() {
            return;
        }

        let mut premises = Vec::with_capacity(inst.premises.len());
        for m in &inst.premises {
            let id = match *m {
                PremiseMatch::Known(id) => id,
                PremiseMatch::Trivial(f) => match self.db.get(&f) {
                    Some(id) => id,
                    None => {
                        let firing = self.firing_id();
                        self.stats.injected_trivial += 1;
                        self.add(
                            f,
                            Provenance {
                                origin: Origin::TrivialInjected,
                                premises: Vec::new(),
                                ndgs: Vec::new(),
                                firing,
                            },
                        )
                    }
                },
            };
            premises.push(id);
        }

        let firing = self.firing_id();
        let origin = match rule.source {
            RuleSource::Lemma => Origin::Lemma {
                rule: rule_index,
                substitution: inst.substitution.clone(),
            },
            _ => Origin::Rule {
                rule: rule_index,
                substitution: inst.substitution.clone(),
            },
        };
        for c in conclusions {
            self.add(
                c,
                Provenance {
                    origin: origin.clone(),
                    premises: premises.clone(),
                    ndgs: ndgs.clone(),
                    firing,
                },
            );
        }
    }

    fn out_of_time(&mut self) -> bool {
        if self.started.elapsed() > self.config.limits.time_budget {
            self.tripped.get_or_insert(LimitKind::Time);
        }
        self.tripped.is_some()
    }

    fn run(&mut self) {
        while let Some(work) = self.queue.pop_front() {
            if self.out_of_time() {
                return;
            }
            self.stats.iterations += 1;
            match work {
                Work::Fact(id) => {
                    debug_assert_eq!(id.index(), self.processed);
                    self.processed += 1;
                }
                Work::Line(l) => {
                    self.active_lines.insert(l);
                }
                Work::Start => {}
            }
            for rule_index in 0..self.rules.len() {
                let insts = {
                    let ctx = MatchContext {
                        db: &self.db,
                        lines: &self.active_lines,
                        points: self.points,
                        all_pairs: self.config.all_pairs_enumeration,
                        horizon: self.processed,
                    };
                    let rule = &self.rules[rule_index];
                    let plans = &self.plans[rule_index];
                    match work {
                        Work::Fact(id) => match_new(rule, plans, id, &ctx),
                        Work::Line(l) => match_new_line(rule, plans, l, &ctx),
                        Work::Start => match_initial(rule, plans, &ctx),
                    }
                };
                for inst in insts {
                    self.fire(rule_index, inst);
                    if self.out_of_time() {
                        return;
                    }
                }
            }
        }
    }
}

/// Worklist-driven semi-naive closure of `hypotheses` under `rules`.
///
/// Work items are processed first in, first out. Each new fact is matched
/// against every rule in list order; instantiations fire in substitution
/// order and their conclusions are inserted in listing order.
pub fn saturate(
    points: &PointTable,
    hypotheses: &[Fact],
    rules: &[Rule],
    config: &EngineConfig,
) -> Result<Fixpoint, GeometryError> {
    let sym = config.symmetries();
    let mut db = FactDatabase::new(sym);
    let plans = rules.iter().map(|r| JoinPlans::prepare(r, &mut db)).collect();
    let mut state = Saturation {
        rules,
        plans,
        db,
        lines: KnownLines::new(),
        active_lines: KnownLines::new(),
        processed: 0,
        queue: VecDeque::new(),
        stats: Stats {
            firings_per_rule: rules.iter().map(|r| (r.label().to_string(), 0)).collect(),
            ..Stats::default()
        },
        next_firing: 0,
        config: *config,
        points: points.len(),
        started: Instant::now(),
        tripped: None,
    };
    state.queue.push_back(Work::Start);
    let mut hyp_ids = Vec::new();
    for h in hypotheses {
        let canon = sym.canon_checked(h)?;
        let firing = state.firing_id();
        let id = state.add(
            canon,
            Provenance {
                origin: Origin::Hypothesis,
                premises: Vec::new(),
                ndgs: Vec::new(),
                firing,
            },
        );
        if !hyp_ids.contains(&id) {
            hyp_ids.push(id);
        }
    }
    state.run();

    let mut stats = state.stats;
    stats.total_facts = state.db.len();
    stats.facts_per_predicate = PredicateKind::ALL
        .iter()
        .map(|&k| (k, state.db.of_kind(k).len()))
        .filter(|(_, n)| *n > 0)
        .collect();
    let exhausted = state.tripped.is_none() && state.queue.is_empty();
    Ok(Fixpoint {
        points: points.clone(),
        db: state.db,
        rules: rules.to_vec(),
        hypotheses: hyp_ids,
        stats,
        exhausted,
        tripped: state.tripped,
    })
}

/// Printed when saturation does not reach the goal.
pub const DECISION_PROCEDURE_ADVICE: &str = "The conjecture is not among the deduced facts. \
The deductive database method is not complete, so this does not refute it: \
use a decision procedure (for example the area method, Wu's method or Groebner bases) \
to decide the conjecture.";

#[derive(Debug, Clone)]
pub enum ProofResult {
    Proved {
        trace: ProofTrace,
        fixpoint: Fixpoint,
    },
    NotProved {
        fixpoint: Fixpoint,
        missing: Vec<Fact>,
        advice: &'static str,
    },
}

impl ProofResult {
    pub fn is_proved(&self) -> bool {
        matches!(self, ProofResult::Proved { .. })
    }

    pub fn fixpoint(&self) -> &Fixpoint {
        match self {
            ProofResult::Proved { fixpoint, .. } | ProofResult::NotProved { fixpoint, .. } => fixpoint,
        }
    }

    pub fn trace(&self) -> Option<&ProofTrace> {
        match self {
            ProofResult::Proved { trace, .. } => Some(trace),
            ProofResult::NotProved { .. } => None,
        }
    }
}

#[derive(Debug, Error)]
pub enum ProveError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("saturation stopped: {limit} limit reached after {facts} facts")]
    Limit {
        limit: LimitKind,
        facts: usize,
        fixpoint: Box<Fixpoint>,
    },
}

/// Saturates and decides every goal by membership.
pub fn prove(
    points: &PointTable,
    hypotheses: &[Fact],
    goals: &[Fact],
    rules: &[Rule],
    config: &EngineConfig,
) -> Result<ProofResult, ProveError> {
    for g in goals {
        g.validate()?;
    }
    let fixpoint = saturate(points, hypotheses, rules, config)?;
    let missing: Vec<Fact> = goals.iter().filter(|g| fixpoint.query(g).is_none()).copied().collect();
    if missing.is_empty() {
        let trace = extract_trace(&fixpoint, goals).expect("all goals present");
        return Ok(ProofResult::Proved { trace, fixpoint });
    }
    if let Some(limit) = fixpoint.tripped {
        return Err(ProveError::Limit {
            limit,
            facts: fixpoint.db.len(),
            fixpoint: Box::new(fixpoint),
        });
    }
    Ok(ProofResult::NotProved {
        fixpoint,
        missing,
        advice: DECISION_PROCEDURE_ADVICE,
    })
}
