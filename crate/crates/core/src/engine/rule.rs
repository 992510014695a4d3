use std::collections::BTreeSet;
use std::fmt;

use crate::error::RuleError;
use crate::fof::{Atom, QuantifiedHorn, Role, SourceOrigin, SourceUnit, Term};
use crate::geometry::{Fact, PointId, PredicateKind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RuleSource {
    Builtin,
    File,
    Lemma,
}

/// An atom whose arguments are rule variable indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub kind: PredicateKind,
    pub args: Vec<usize>,
}

impl Pattern {
    /// Ground instance, or `None` if some argument is unbound.
    pub fn instantiate(&self, subst: &[Option<PointId>]) -> Option<Fact> {
        let args: Option<Vec<PointId>> = self.args.iter().map(|&v| subst[v]).collect();
        Fact::raw(self.kind, &args?).ok()
    }

    pub fn ground(&self, subst: &[PointId]) -> Fact {
        let args: Vec<PointId> = self.args.iter().map(|&v| subst[v]).collect();
        Fact::raw(self.kind, &args).expect("pattern arity checked at compile time")
    }

    pub fn bound_count(&self, bound: &[bool]) -> usize {
        self.args.iter().filter(|&&v| bound[v]).count()
    }
}

/// A compiled Horn rule.
#[derive(Debug, Clone, PartialEq)]
pub struct Rule {
    pub name: String,
    pub vars: Vec<String>,
    pub premises: Vec<Pattern>,
    pub ndg_premises: Vec<Pattern>,
    pub conclusions: Vec<Pattern>,
    /// Variables that no positive premise binds. They are grounded by
    /// enumerating lines of the configuration.
    pub enum_vars: Vec<usize>,
    /// Pairs of enumeration variables that sit together in a line slot of a
    /// conclusion; each such pair must name a known line.
    pub enum_lines: Vec<(usize, usize)>,
    pub source: RuleSource,
}

impl Rule {
    /// Display label: unit names of the form `ruleX` are shown as `X`.
    pub fn label(&self) -> &str {
        rule_label(&self.name)
    }

    /// Back to a FOF unit, for printing lemmas into catalogs.
    pub fn to_unit(&self) -> SourceUnit {
        let atom = |p: &Pattern| Atom {
            predicate: p.kind,
            args: p.args.iter().map(|&v| Term::Var(self.vars[v].clone())).collect(),
        };
        SourceUnit {
            name: self.name.clone(),
            role: Role::Axiom,
            formula: QuantifiedHorn {
                variables: self.vars.clone(),
                premises: self.premises.iter().map(atom).collect(),
                ndg_premises: self.ndg_premises.iter().map(atom).collect(),
                conclusions: self.conclusions.iter().map(atom).collect(),
            },
            origin: SourceOrigin::default(),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::fof::print_unit(&self.to_unit()))
    }
}

pub fn rule_label(name: &str) -> &str {
    match name.strip_prefix("rule") {
        Some(rest) if rest.starts_with(|c: char| c.is_ascii_uppercase()) => rest,
        _ => name,
    }
}

/// Compiles an axiom unit into a rule, classifying its variables.
pub fn compile_rule(
    unit: &SourceUnit,
    source: RuleSource,
    allow_enumeration: bool,
) -> Result<Rule, RuleError> {
    if unit.role != Role::Axiom {
        return Err(RuleError::NotAnAxiom(unit.name.clone()));
    }
    let f = &unit.formula;
    if f.conclusions.is_empty() {
        return Err(RuleError::NoConclusions {
            rule: unit.name.clone(),
        });
    }
    let vars = f.variables.clone();
    let index = |atom: &Atom| -> Result<Pattern, RuleError> {
        let args = atom
            .args
            .iter()
            .map(|t| match t {
                Term::Var(v) => Ok(vars.iter().position(|x| x == v).expect("quantified")),
                Term::Const(c) => Err(RuleError::Constant {
                    rule: unit.name.clone(),
                    name: c.clone(),
                }),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Pattern {
            kind: atom.predicate,
            args,
        })
    };
    let premises = f.premises.iter().map(index).collect::<Result<Vec<_>, _>>()?;
    let ndg_premises = f.ndg_premises.iter().map(index).collect::<Result<Vec<_>, _>>()?;
    let conclusions = f.conclusions.iter().map(index).collect::<Result<Vec<_>, _>>()?;

    let bound: BTreeSet<usize> = premises.iter().flat_map(|p| p.args.iter().copied()).collect();
    let mut enum_vars: Vec<usize> = conclusions
        .iter()
        .chain(&ndg_premises)
        .flat_map(|p| p.args.iter().copied())
        .filter(|v| !bound.contains(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    enum_vars.sort_unstable();
    if !allow_enumeration {
        if let Some(&v) = enum_vars.first() {
            return Err(RuleError::Uncoverable {
                rule: unit.name.clone(),
                var: vars[v].clone(),
            });
        }
    }
    let mut enum_lines = BTreeSet::new();
    for c in &conclusions {
        for &(i, j) in c.kind.line_slots() {
            let (p, q) = (c.args[i], c.args[j]);
            if enum_vars.contains(&p) && enum_vars.contains(&q) && p != q {
                enum_lines.insert((p.min(q), p.max(q)));
            }
        }
    }

    Ok(Rule {
        name: unit.name.clone(),
        vars,
        premises,
        ndg_premises,
        conclusions,
        enum_vars,
        enum_lines: enum_lines.into_iter().collect(),
        source,
    })
}
