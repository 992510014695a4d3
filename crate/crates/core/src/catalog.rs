//! Rule catalogs: the embedded year-7 catalog and catalogs read from files.

use std::path::Path;

use sha2::{Digest, Sha256};

use crate::engine::{compile_rule, Rule, RuleSource};
use crate::error::{FofError, ProblemError, RuleError};
use crate::fof::{load_file, print_unit, Role, SourceLoader, SourceUnit};

/// Names a directory searched for catalogs that are not found by path.
pub const CATALOG_DIR_VAR: &str = "GEODD_CATALOG_DIR";

/// File name of the embedded catalog.
pub const YEAR7_FILE: &str = "geometryDeductiveDatabaseMethod.ax";

/// Selector of the embedded catalog.
pub const YEAR7: &str = "year7";

const YEAR7_TEXT: &str = include_str!("../catalogs/geometryDeductiveDatabaseMethod.ax");

/// Text of an embedded catalog by file name.
pub fn embedded_file(name: &str) -> Option<&'static str> {
    (name == YEAR7_FILE).then_some(YEAR7_TEXT)
}

/// Compiles the axioms among `units`; ground facts are skipped.
pub fn rules_from_units(units: &[SourceUnit], source: RuleSource) -> Result<Vec<Rule>, RuleError> {
    let mut rules: Vec<Rule> = Vec::new();
    for u in units {
        if u.role != Role::Axiom || u.formula.is_ground_fact() {
            continue;
        }
        let rule = compile_rule(u, source, true)?;
        if rules.iter().any(|r| r.name == rule.name) {
            return Err(RuleError::NameCollision(rule.name));
        }
        rules.push(rule);
    }
    Ok(rules)
}

/// The embedded catalog, compiled.
pub fn year7() -> Vec<Rule> {
    let units = crate::fof::parse_units(YEAR7_TEXT, Path::new(YEAR7_FILE))
        .expect("embedded catalog parses")
        .units;
    rules_from_units(&units, RuleSource::Builtin).expect("embedded catalog compiles")
}

/// Loads a catalog by selector: `year7` or a path. Conjectures are rejected.
pub fn load_catalog(selector: &str, loader: &dyn SourceLoader) -> Result<Vec<Rule>, ProblemError> {
    if selector == YEAR7 {
        return Ok(year7());
    }
    let path = Path::new(selector);
    if path.extension().is_none() && !path.exists() {
        return Err(ProblemError::UnknownCatalog(selector.to_string()));
    }
    let units = load_file(path, loader)?;
    if let Some(c) = units.iter().find(|u| u.role == Role::Conjecture) {
        return Err(FofError::ConjectureInCatalog {
            name: c.name.clone(),
            path: path.to_path_buf(),
        }
        .into());
    }
    let source = if embedded_file(path.file_name().and_then(|n| n.to_str()).unwrap_or("")).is_some()
        && !path.exists()
    {
        RuleSource::Builtin
    } else {
        RuleSource::File
    };
    Ok(rules_from_units(&units, source)?)
}

/// Rules whose label or name is listed, in catalog order.
pub fn select(rules: &[Rule], labels: &[&str]) -> Vec<Rule> {
    rules
        .iter()
        .filter(|r| labels.contains(&r.label()) || labels.contains(&r.name.as_str()))
        .cloned()
        .collect()
}

/// The catalog without the listed rules.
pub fn without(rules: &[Rule], labels: &[&str]) -> Vec<Rule> {
    rules
        .iter()
        .filter(|r| !labels.contains(&r.label()) && !labels.contains(&r.name.as_str()))
        .cloned()
        .collect()
}

/// SHA-256 over the printed rules, in order.
pub fn catalog_identity(rules: &[Rule]) -> String {
    let mut h = Sha256::new();
    for r in rules {
        h.update(print_unit(&r.to_unit()).as_bytes());
        h.update(b"\n");
    }
    format!("sha256:{:x}", h.finalize())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fof::MemoryLoader;

    #[test]
    fn year7_compiles() {
        let rules = year7();
        let labels: Vec<&str> = rules.iter().map(Rule::label).collect();
        for l in ["R1", "R1a", "R1b", "D40", "D61", "R4", "R4a", "R5", "R5f", "R6", "D9", "R8", "D58", "eqtrans"] {
            assert!(labels.contains(&l), "{l} missing");
        }
        assert_eq!(rules.len(), 21);
        assert!(rules.iter().all(|r| r.source == RuleSource::Builtin));
    }

    #[test]
    fn selection() {
        let rules = year7();
        let s = select(&rules, &["R1a", "D58"]);
        assert_eq!(s.len(), 2);
        assert_eq!(without(&rules, &["R1a"]).len(), rules.len() - 1);
    }

    #[test]
    fn conjecture_rejected() {
        let loader = MemoryLoader::new().with(
            "c.ax",
            "fof(x,conjecture,(![A,B,C] : coll(A,B,C) => coll(B,A,C))).",
        );
        assert!(matches!(
            load_catalog("c.ax", &loader),
            Err(ProblemError::Fof(FofError::ConjectureInCatalog { .. }))
        ));
    }

    #[test]
    fn unknown_selector() {
        assert!(matches!(
            load_catalog("year8", &MemoryLoader::new()),
            Err(ProblemError::UnknownCatalog(_))
        ));
    }

    #[test]
    fn identity_is_stable() {
        let a = catalog_identity(&year7());
        assert_eq!(a, catalog_identity(&year7()));
        assert_ne!(a, catalog_identity(&select(&year7(), &["R1"])));
    }
}
