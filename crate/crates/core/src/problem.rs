//! Problems: hypotheses, goals and the rules that come with them.
//!
//! The conjecture's quantified variables become the problem's points, in
//! quantifier order. Its premises are the hypotheses and its conclusions
//! the goals. Ground axioms add hypotheses; axioms with variables are rules.

use std::path::Path;

use crate::catalog::rules_from_units;
use crate::engine::{prove, saturate, EngineConfig, Fixpoint, ProofResult, ProveError, Rule, RuleSource};
use crate::error::{GeometryError, ProblemError};
use crate::fof::{load_file, Atom, Role, SourceLoader, SourceUnit};
use crate::geometry::{Fact, PointTable};

#[derive(Debug, Clone)]
pub struct Problem {
    pub name: String,
    pub points: PointTable,
    pub hypotheses: Vec<Fact>,
    pub goals: Vec<Fact>,
    /// Rules included by or written in the problem file.
    pub rules: Vec<Rule>,
}

fn fact(points: &mut PointTable, atom: &Atom) -> Result<Fact, GeometryError> {
    let args: Vec<_> = atom.args.iter().map(|t| points.intern(t.name())).collect();
    Fact::new(atom.predicate, &args)
}

impl Problem {
    pub fn from_units(units: &[SourceUnit]) -> Result<Problem, ProblemError> {
        let conjectures: Vec<&SourceUnit> = units.iter().filter(|u| u.role == Role::Conjecture).collect();
        if conjectures.len() > 1 {
            return Err(ProblemError::ConjectureCount(conjectures.len()));
        }
        let mut points = PointTable::new();
        let mut hypotheses = Vec::new();
        let mut goals = Vec::new();
        let mut name = String::new();
        if let Some(c) = conjectures.first() {
            name = c.name.clone();
            for v in &c.formula.variables {
                points.intern(v);
            }
            for a in &c.formula.premises {
                hypotheses.push(fact(&mut points, a)?);
            }
            for a in &c.formula.conclusions {
                goals.push(fact(&mut points, a)?);
            }
        }
        for u in units {
            if u.role == Role::Axiom && u.formula.is_ground_fact() {
                for a in &u.formula.conclusions {
                    hypotheses.push(fact(&mut points, a)?);
                }
            }
        }
        let rules = rules_from_units(units, RuleSource::File)?;
        Ok(Problem {
            name,
            points,
            hypotheses,
            goals,
            rules,
        })
    }

    pub fn load(path: &Path, loader: &dyn SourceLoader) -> Result<Problem, ProblemError> {
        let units = load_file(path, loader)?;
        let mut p = Problem::from_units(&units)?;
        if p.name.is_empty() {
            p.name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
        }
        Ok(p)
    }

    pub fn saturate(&self, rules: &[Rule], config: &EngineConfig) -> Result<Fixpoint, GeometryError> {
        saturate(&self.points, &self.hypotheses, rules, config)
    }

    pub fn prove(&self, rules: &[Rule], config: &EngineConfig) -> Result<ProofResult, ProveError> {
        prove(&self.points, &self.hypotheses, &self.goals, rules, config)
    }
}
