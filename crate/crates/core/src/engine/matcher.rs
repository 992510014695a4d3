//! Premise matching for semi-naive evaluation.
//!
//! A rule fires on a new fact by unifying one of its premises with some
//! symmetry variant of that fact, then joining the remaining premises against
//! the database. The join order is fixed per (rule, seed premise): at each
//! step the premise with the most bound variables goes next. Each non-ground
//! step is answered by a variant index keyed on the bound positions.

use std::collections::{BTreeSet, HashMap, HashSet};

use super::db::{FactDatabase, FactId, Mask};
use super::rule::{Pattern, Rule};
use crate::geometry::{is_reflexive_trivial, reflexive_shapes, Fact, PointId};

/// An unordered point pair, smaller id first.
pub type Line = (PointId, PointId);

pub type KnownLines = BTreeSet<Line>;

fn line(p: PointId, q: PointId) -> Line {
    (p.min(q), p.max(q))
}

/// Lines named by the configuration: line slots of `para`, `perp`,
/// `rightangle` and `eqangle` facts, sides and diagonals of quadrilaterals,
/// and every pair inside a `coll` fact.
pub fn known_lines(db: &FactDatabase) -> KnownLines {
    db.facts().iter().flat_map(|f| f.lines()).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Step {
    premise: usize,
    mask: Mask,
    ground: bool,
}

/// Join orders of one rule, one per seed premise plus an unseeded order.
#[derive(Debug, Clone)]
pub struct JoinPlans {
    seeded: Vec<Vec<Step>>,
    unseeded: Vec<Step>,
}

fn plan(rule: &Rule, seed: Option<usize>) -> Vec<Step> {
    let mut bound = vec![false; rule.vars.len()];
    if let Some(s) = seed {
        for &v in &rule.premises[s].args {
            bound[v] = true;
        }
    }
    let mut remaining: Vec<usize> = (0..rule.premises.len()).filter(|&i| Some(i) != seed).collect();
    let mut steps = Vec::new();
    while !remaining.is_empty() {
        let (pos, &next) = remaining
            .iter()
            .enumerate()
            .max_by_key(|(pos, &i)| (rule.premises[i].bound_count(&bound), std::cmp::Reverse(*pos)))
            .expect("non-empty");
        remaining.remove(pos);
        let p = &rule.premises[next];
        let mut mask: Mask = 0;
        for (slot, &v) in p.args.iter().enumerate() {
            if bound[v] {
                mask |= 1 << slot;
            }
        }
        let ground = p.args.iter().all(|&v| bound[v]);
        for &v in &p.args {
            bound[v] = true;
        }
        steps.push(Step {
            premise: next,
            mask,
            ground,
        });
    }
    steps
}

impl JoinPlans {
    /// Builds the plans and registers the variant indexes they need.
    pub fn prepare(rule: &Rule, db: &mut FactDatabase) -> Self {
        let seeded: Vec<Vec<Step>> = (0..rule.premises.len()).map(|i| plan(rule, Some(i))).collect();
        let unseeded = plan(rule, None);
        for step in seeded.iter().flatten().chain(&unseeded) {
            if !step.ground {
                db.register_mask(rule.premises[step.premise].kind, step.mask);
            }
        }
        JoinPlans { seeded, unseeded }
    }
}

/// Read-only view used while matching.
pub struct MatchContext<'a> {
    pub db: &'a FactDatabase,
    pub lines: &'a KnownLines,
    /// Number of points in the problem; enumeration ranges over `0..points`.
    pub points: usize,
    /// Let enumeration variables range over every pair of distinct points.
    pub all_pairs: bool,
    /// Only facts with a smaller index take part in joins: the facts that
    /// have already been processed, plus the one being processed.
    pub horizon: usize,
}

impl MatchContext<'_> {
    fn visible(&self, id: FactId) -> bool {
        id.index() < self.horizon
    }
}

/// How a premise of a ground instantiation is satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PremiseMatch {
    Known(FactId),
    /// A reflexive fact absent from the database; injected before firing.
    Trivial(Fact),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instantiation {
    pub substitution: Vec<PointId>,
    pub premises: Vec<PremiseMatch>,
}

fn unify(pattern: &Pattern, fact: &Fact, subst: &mut [Option<PointId>]) -> bool {
    for (&v, &p) in pattern.args.iter().zip(fact.args()) {
        match subst[v] {
            Some(q) if q != p => return false,
            Some(_) => {}
            None => subst[v] = Some(p),
        }
    }
    true
}

struct Join<'r, 'c> {
    rule: &'r Rule,
    ctx: &'c MatchContext<'c>,
    required_line: Option<Line>,
    out: BTreeSet<Vec<PointId>>,
}

impl Join<'_, '_> {
    fn run(&mut self, steps: &[Step], subst: &mut Vec<Option<PointId>>) {
        let Some((step, rest)) = steps.split_first() else {
            self.enumerate(0, subst);
            return;
        };
        let pattern = &self.rule.premises[step.premise];
        if step.ground {
            let fact = pattern.instantiate(subst).expect("ground step");
            if !fact.is_valid() {
                return;
            }
            let known = self.ctx.db.get(&fact).is_some_and(|id| self.ctx.visible(id));
            if known || is_reflexive_trivial(&fact) {
                self.run(rest, subst);
            }
            return;
        }
        let probe_args: Vec<PointId> = pattern
            .args
            .iter()
            .map(|&v| subst[v].unwrap_or_default())
            .collect();
        let probe = Fact::raw(pattern.kind, &probe_args).expect("arity");
        for (id, variant) in self.ctx.db.variants_matching(pattern.kind, step.mask, &probe) {
            if !self.ctx.visible(*id) {
                continue;
            }
            let mut next = subst.clone();
            if unify(pattern, variant, &mut next) {
                self.run(rest, &mut next);
            }
        }
        for shape in reflexive_shapes(pattern.kind) {
            self.trivial(pattern, shape, subst, rest);
        }
    }

    /// Continues the join with every reflexive instance of `pattern` that
    /// satisfies the slot equalities of `shape`.
    fn trivial(&mut self, pattern: &Pattern, shape: &[(usize, usize)], subst: &[Option<PointId>], rest: &[Step]) {
        let mut parent: Vec<usize> = (0..subst.len()).collect();
        fn root(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for &(i, j) in shape {
            let (a, b) = (root(&mut parent, pattern.args[i]), root(&mut parent, pattern.args[j]));
            parent[a] = b;
        }
        // value of each class, if bound
        let mut value: Vec<Option<PointId>> = vec![None; subst.len()];
        for &v in &pattern.args {
            let r = root(&mut parent, v);
            if let Some(p) = subst[v] {
                match value[r] {
                    Some(q) if q != p => return,
                    _ => value[r] = Some(p),
                }
            }
        }
        let mut free: Vec<usize> = pattern
            .args
            .iter()
            .map(|&v| root(&mut parent, v))
            .filter(|&r| value[r].is_none())
            .collect();
        free.sort_unstable();
        free.dedup();
        let members: Vec<(usize, usize)> = pattern.args.iter().map(|&v| (v, root(&mut parent, v))).collect();
        self.assign(pattern, &members, &free, &mut value, subst, rest);
    }

    fn assign(
        &mut self,
        pattern: &Pattern,
        members: &[(usize, usize)],
        free: &[usize],
        value: &mut Vec<Option<PointId>>,
        subst: &[Option<PointId>],
        rest: &[Step],
    ) {
        if let Some((&r, more)) = free.split_first() {
            for p in 0..self.ctx.points {
                value[r] = Some(PointId(p as u16));
                self.assign(pattern, members, more, value, subst, rest);
            }
            value[r] = None;
            return;
        }
        let mut next = subst.to_vec();
        for &(v, r) in members {
            next[v] = value[r];
        }
        match pattern.instantiate(&next) {
            Some(f) if f.is_valid() && is_reflexive_trivial(&f) => self.run(rest, &mut next),
            _ => {}
        }
    }

    fn enumerate(&mut self, k: usize, subst: &mut Vec<Option<PointId>>) {
        if k == self.rule.enum_vars.len() {
            if self.enum_lines_ok(subst) {
                self.out
                    .insert(subst.iter().map(|p| p.expect("all variables bound")).collect());
            }
            return;
        }
        let v = self.rule.enum_vars[k];
        for p in 0..self.ctx.points {
            subst[v] = Some(PointId(p as u16));
            self.enumerate(k + 1, subst);
        }
        subst[v] = None;
    }

    fn enum_lines_ok(&self, subst: &[Option<PointId>]) -> bool {
        let mut hit_required = self.required_line.is_none();
        for &(a, b) in &self.rule.enum_lines {
            let (p, q) = (subst[a].expect("bound"), subst[b].expect("bound"));
            if p == q {
                return false;
            }
            let l = line(p, q);
            if !self.ctx.all_pairs && !self.ctx.lines.contains(&l) {
                return false;
            }
            if Some(l) == self.required_line {
                hit_required = true;
            }
        }
        hit_required
    }
}

/// Resolves the premises of a ground substitution, dropping substitutions
/// that are semantically identical to an earlier one (same canonical
/// premises, conclusions and provisos).
fn finish(rule: &Rule, ctx: &MatchContext<'_>, substs: BTreeSet<Vec<PointId>>) -> Vec<Instantiation> {
    let sym = ctx.db.symmetries();
    let mut seen = HashSet::new();
    let mut canon: HashMap<Fact, Fact> = HashMap::new();
    let mut out = Vec::new();
    for s in substs {
        // would add nothing
        let productive = rule.conclusions.iter().any(|p| {
            let f = p.ground(&s);
            f.is_valid() && !is_reflexive_trivial(&f)
        });
        if !productive {
            continue;
        }
        let mut ground = |ps: &[Pattern]| -> Vec<Fact> {
            ps.iter()
                .map(|p| *canon.entry(p.ground(&s)).or_insert_with_key(|f| sym.canon(f)))
                .collect()
        };
        let premise_facts = ground(&rule.premises);
        let key = (premise_facts.clone(), ground(&rule.conclusions), ground(&rule.ndg_premises));
        if !seen.insert(key) {
            continue;
        }
        let premises = premise_facts
            .into_iter()
            .map(|f| {
                match ctx.db.get(&f) {
                    Some(id) => PremiseMatch::Known(id),
                    None => PremiseMatch::Trivial(f),
                }
            })
            .collect();
        out.push(Instantiation {
            substitution: s,
            premises,
        });
    }
    out
}

/// Ground instantiations of `rule` that use `new` for at least one positive
/// premise, sorted by substitution. Provisos are instantiated, not checked.
pub fn match_new(rule: &Rule, plans: &JoinPlans, new: FactId, ctx: &MatchContext<'_>) -> Vec<Instantiation> {
    let fact = *ctx.db.fact(new);
    let sym = ctx.db.symmetries();
    let mut join = Join {
        rule,
        ctx,
        required_line: None,
        out: BTreeSet::new(),
    };
    for (i, premise) in rule.premises.iter().enumerate() {
        if premise.kind != fact.kind() {
            continue;
        }
        for variant in sym.orbit(&fact) {
            let mut subst = vec![None; rule.vars.len()];
            if unify(premise, &variant, &mut subst) {
                join.run(&plans.seeded[i], &mut subst);
            }
        }
    }
    let substs = std::mem::take(&mut join.out);
    finish(rule, ctx, substs)
}

/// Instantiations of an enumerating rule in which some enumerated line pair
/// equals `new_line`; used when a line first appears.
pub fn match_new_line(
    rule: &Rule,
    plans: &JoinPlans,
    new_line: Line,
    ctx: &MatchContext<'_>,
) -> Vec<Instantiation> {
    if rule.enum_lines.is_empty() {
        return Vec::new();
    }
    let mut join = Join {
        rule,
        ctx,
        required_line: Some(line(new_line.0, new_line.1)),
        out: BTreeSet::new(),
    };
    let mut subst = vec![None; rule.vars.len()];
    join.run(&plans.unseeded, &mut subst);
    let substs = std::mem::take(&mut join.out);
    finish(rule, ctx, substs)
}

/// Instantiations available before any fact is processed: those whose
/// premises are all reflexive.
pub fn match_initial(rule: &Rule, plans: &JoinPlans, ctx: &MatchContext<'_>) -> Vec<Instantiation> {
    let mut join = Join {
        rule,
        ctx,
        required_line: None,
        out: BTreeSet::new(),
    };
    let mut subst = vec![None; rule.vars.len()];
    join.run(&plans.unseeded, &mut subst);
    let substs = std::mem::take(&mut join.out);
    finish(rule, ctx, substs)
}

/// The reflexive fact needed by a premise, if the premise is ground under
/// `subst`, reflexive, and absent from `db`.
pub fn inject_trivial(db: &FactDatabase, pattern: &Pattern, subst: &[Option<PointId>]) -> Option<Fact> {
    let fact = pattern.instantiate(subst)?;
    if !fact.is_valid() || !is_reflexive_trivial(&fact) {
        return None;
    }
    let canon = db.symmetries().canon(&fact);
    (!db.contains(&canon)).then_some(canon)
}
